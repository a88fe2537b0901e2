#include "asd/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "asd/image_ops.hpp"
#include "asd/metrics.hpp"
#include "asd/png_io.hpp"
#include "asd/ratio_bucket.hpp"
#include "asd/run_config.hpp"
#include "asd/sampler.hpp"
#include "asd/sr_task.hpp"

namespace asd::cli {

namespace fs = std::filesystem;

int thread_cap() {
    const int hw = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    const char* env = std::getenv("ASD_THREADS");
    if (!env || !*env) return hw;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) return hw;
    return static_cast<int>(std::min<long>(v, 1024));
}

namespace {

// Raised for flag combinations that are invalid before any work starts.
struct UsageError : Error {
    using Error::Error;
};

struct DenoiserFlags {
    std::string kind;
    double mean = 0.0;
    double sigma = 0.5;
    int kernel_radius = 6;
    double kernel_width = 2.0;
    std::string boundary = "reflect";
    int tile_pad = 0;

    void add(CLI::App& app) {
        app.add_option("--denoiser", kind, "iid_exact | correlated_exact | correlated_tile_limited")
            ->capture_default_str();
        app.add_option("--mean", mean, "Prior mean (latent units)")->capture_default_str();
        app.add_option("--sigma", sigma, "Prior standard deviation (latent units)")->capture_default_str();
        app.add_option("--kernel-radius", kernel_radius, "Correlation kernel radius")->capture_default_str();
        app.add_option("--kernel-width", kernel_width, "Correlation kernel Gaussian width")->capture_default_str();
        app.add_option("--boundary", boundary, "reflect | circular")->capture_default_str();
        app.add_option("--tile-pad", tile_pad, "Context pixels for the tile-limited denoiser")
            ->capture_default_str();
    }

    DenoiserSpec build() const {
        DenoiserSpec spec;
        spec.kind = parse_denoiser_kind(kind);
        spec.prior.mean = mean;
        spec.prior.sigma = sigma;
        if (boundary == "reflect") {
            spec.prior.boundary = BoundaryMode::reflect;
        } else if (boundary == "circular") {
            spec.prior.boundary = BoundaryMode::circular;
        } else {
            throw UsageError("--boundary must be reflect or circular");
        }
        if (spec.kind == DenoiserKind::correlated_exact || spec.kind == DenoiserKind::correlated_tile_limited) {
            spec.prior.kernel = gaussian_kernel(kernel_radius, kernel_width);
        }
        spec.tile_pad = tile_pad;
        spec.validate();
        return spec;
    }
};

fs::path prepare_out(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return fs::path(out_dir) / name;
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
    return p.parent_path() / (p.stem().string() + suffix);
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw IoError(p.string() + ": cannot open for writing");
    f << text;
}

// ---- bucket ----------------------------------------------------------------

struct BucketArgs {
    std::string manifest;
    std::string table;
    int batch_size = 4;
    std::uint64_t seed = 0;
    std::string out = "buckets.csv";
    std::string out_dir = ".";
};

int cmd_bucket(const BucketArgs& a, std::ostream& out, std::ostream& err) {
    const RatioSizeTable table = a.table.empty() ? default_table() : read_table_json(a.table);
    const DatasetManifest manifest = read_manifest_jsonl(a.manifest);
    if (manifest.empty()) err << "warning: " << a.manifest << " has no records\n";

    const fs::path csv = prepare_out(a.out_dir, a.out);
    {
        std::ofstream f(csv);
        if (!f) throw IoError(csv.string() + ": cannot open for writing");
        write_bucket_csv(f, manifest, table);
    }
    Rng rng = Rng::for_purpose(a.seed, StreamPurpose::shuffle);
    const auto batches = group_batches(manifest, table, a.batch_size, rng);
    {
        const fs::path bcsv = sibling(csv, "_batches.csv");
        std::ofstream f(bcsv);
        if (!f) throw IoError(bcsv.string() + ": cannot open for writing");
        write_batch_csv(f, batches);
    }
    std::map<int, long> counts;
    for (const auto& rec : manifest.records()) ++counts[nearest_bucket(rec.height, rec.width, table).index];
    for (const auto& [bucket, n] : counts) {
        const auto& e = table.bucket(bucket);
        out << "bucket " << bucket << " (" << e.height << "x" << e.width << "): " << n << "\n";
    }
    out << manifest.size() << " records, " << batches.size() << " batches -> " << csv.string() << "\n";
    return kExitOk;
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
    int height = 512;
    int width = 512;
    int steps = kDefaultGenerationSteps;
    std::uint64_t seed = 0;
    int factor = 8;
    std::string sampler = "ddim";
    double eta = 0.0;
    DenoiserFlags denoiser{.kind = "iid_exact"};
    std::string out = "generate.png";
    std::string out_dir = ".";
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    if (a.factor < 1) throw UsageError("--factor must be >= 1");
    if (a.height % a.factor != 0 || a.width % a.factor != 0) {
        throw DimensionError("image size " + std::to_string(a.height) + "x" + std::to_string(a.width) +
                             " is not divisible by latent factor " + std::to_string(a.factor) +
                             "; use multiples of " + std::to_string(a.factor) + " or change --factor");
    }
    DenoiserSpec spec;
    SampleConfig cfg;
    try {
        spec = a.denoiser.build();
        cfg.strategy = Strategy::full;
        cfg.steps = a.steps;
        cfg.seed = a.seed;
        cfg.sampler = parse_sampler_kind(a.sampler);
        cfg.eta = a.eta;
        cfg.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    const NoiseSchedule sched = make_linear_schedule(a.steps);
    const SampleResult res = sample_full(a.height / a.factor, a.width / a.factor, 3, spec, sched, cfg);
    const Plane image = decode(res.latent, a.factor);

    const fs::path png = prepare_out(a.out_dir, a.out);
    write_image(png.string(), image);
    nlohmann::json side = {
        {"command", "generate"},
        {"height", a.height},
        {"width", a.width},
        {"factor", a.factor},
        {"seed", a.seed},
        {"denoiser", to_string(spec.kind)},
        {"stats", to_json(res.stats)},
    };
    write_text(sibling(png, ".json"), side.dump(2) + "\n");
    out << "wrote " << png.string() << " (" << res.stats.denoiser_invocations << " denoiser calls, "
        << res.stats.wall_time_s << " s)\n";
    return kExitOk;
}

// ---- upscale ---------------------------------------------------------------

struct UpscaleArgs {
    std::string in;
    int scale = 4;
    std::string strategy = "implicit";
    int tile = 64;
    int overlap = 0;
    int offset_range = 16;
    std::string offset_mode = "random";
    int steps = kDefaultGenerationSteps;
    int schedule_steps = kDefaultUpscaleSteps;
    std::string sampler = "ddim";
    double eta = 0.0;
    double strength = 1.0;
    int factor = 1;
    int workers = 1;
    std::uint64_t seed = 0;
    DenoiserFlags denoiser{.kind = "correlated_tile_limited"};
    std::string out = "upscaled.png";
    std::string out_dir = ".";
    // Set from the parser: which of the strategy-specific flags were given.
    bool overlap_given = false;
    bool offset_given = false;
};

SampleConfig upscale_config(const UpscaleArgs& a) {
    SampleConfig cfg;
    cfg.strategy = parse_strategy(a.strategy);
    if (a.overlap_given && cfg.strategy != Strategy::tiled_explicit) {
        throw UsageError("--overlap is only valid with --strategy explicit");
    }
    if (a.offset_given && cfg.strategy != Strategy::tiled_implicit) {
        throw UsageError("--offset-range/--offset-mode are only valid with --strategy implicit");
    }
    cfg.tile_h = cfg.tile_w = a.tile;
    cfg.overlap = cfg.strategy == Strategy::tiled_explicit ? a.overlap : 0;
    cfg.offset_range = cfg.strategy == Strategy::tiled_implicit ? a.offset_range : 0;
    cfg.offset_mode = parse_offset_mode(a.offset_mode);
    cfg.steps = a.steps;
    cfg.sampler = parse_sampler_kind(a.sampler);
    cfg.eta = a.eta;
    cfg.seed = a.seed;
    cfg.workers = std::min(a.workers, thread_cap());
    if (cfg.sampler == SamplerKind::ddpm) cfg.steps = a.schedule_steps;
    cfg.validate();
    return cfg;
}

int cmd_upscale(const UpscaleArgs& a, std::ostream& out) {
    SampleConfig cfg;
    DenoiserSpec spec;
    try {
        cfg = upscale_config(a);
        spec = a.denoiser.build();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    const Plane input = read_image(a.in);
    const NoiseSchedule sched = make_linear_schedule(a.schedule_steps);
    const UpscaleResult res = upscale_fstd(input, a.scale, spec, sched, cfg, a.strength, a.factor);

    const fs::path png = prepare_out(a.out_dir, a.out);
    write_image(png.string(), res.image);
    write_text(sibling(png, ".json"), to_json(res.stats).dump(2) + "\n");

    const Plane baseline = resize_bilinear(input, res.image.height(), res.image.width());
    const int lh = res.image.height() / a.factor;
    const int lw = res.image.width() / a.factor;
    const bool tiled = cfg.strategy != Strategy::full;
    const TilePlan grid = plan_disjoint(lh, lw, tiled ? cfg.tile_h : lh, tiled ? cfg.tile_w : lw);
    MetricsRow row;
    row.run_id = png.stem().string();
    row.strategy = std::string(to_string(cfg.strategy));
    if (cfg.strategy == Strategy::tiled_implicit) row.strategy += "&" + std::string(to_string(cfg.offset_mode));
    row.psnr_y = psnr_y(res.image, baseline);
    row.ssim = ssim(res.image, baseline);
    row.seam_score = seam_score(res.image, grid, a.factor).score;
    row.invocations = res.stats.denoiser_invocations;
    row.wall_time_s = res.stats.wall_time_s;
    const double tile_px = static_cast<double>(cfg.tile_h) * a.factor;
    row.est_memory_g = tiled ? estimate_peak_memory(default_memory_model(), res.image.height(), res.image.width(),
                                                    std::pair{tile_px, tile_px})
                             : estimate_peak_memory(default_memory_model(), res.image.height(), res.image.width());
    {
        const fs::path csv = sibling(png, "_metrics.csv");
        std::ofstream f(csv);
        if (!f) throw IoError(csv.string() + ": cannot open for writing");
        write_metrics_header(f);
        write_metrics_row(f, row);
    }
    out << "wrote " << png.string() << " " << res.image.height() << "x" << res.image.width() << " (start step "
        << res.start_step << ", " << res.stats.denoiser_invocations << " denoiser calls, seam "
        << *row.seam_score << ")\n";
    return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchRow {
    std::string name;
    SampleConfig cfg;
};

std::vector<BenchRow> bench_rows(const RunConfig& rc) {
    SampleConfig base = rc.sample;
    base.overlap = 0;
    base.offset_range = 0;
    std::vector<BenchRow> rows;
    SampleConfig c = base;
    c.strategy = Strategy::tiled_disjoint;
    rows.push_back({"w/o", c});
    c = base;
    c.strategy = Strategy::tiled_explicit;
    c.overlap = rc.bench.overlap;
    rows.push_back({"explicit", c});
    c = base;
    c.strategy = Strategy::tiled_implicit;
    c.offset_range = rc.bench.offset_range;
    c.offset_mode = OffsetMode::fixed;
    rows.push_back({"implicit&fixed", c});
    c.offset_mode = OffsetMode::random;
    rows.push_back({"implicit&random", c});
    return rows;
}

MetricsRow bench_cell(const RunConfig& rc, const BenchRow& row, std::uint64_t seed) {
    MetricsRow m;
    m.run_id = row.name + "-s" + std::to_string(seed);
    m.strategy = row.name;
    SampleConfig cfg = row.cfg;
    cfg.seed = seed;
    try {
        const DenoiserSpec spec = rc.denoiser.build();
        const NoiseSchedule sched = rc.schedule.build();
        if (rc.bench.task == BenchTask::latent) {
            const auto& b = rc.bench;
            const SampleResult res = sample_tiled(b.latent_h, b.latent_w, b.channels, spec, sched, cfg);
            m.invocations = res.stats.denoiser_invocations;
            m.wall_time_s = res.stats.wall_time_s;
        } else {
            SrTask task;
            task.hr_size = rc.bench.hr_size;
            task.scale = rc.bench.scale;
            task.latent_factor = rc.bench.latent_factor;
            task.strength = rc.bench.strength;
            task.denoiser = spec;
            task.schedule_steps = rc.schedule.steps;
            const SrOutcome o = run_sr_case(task, cfg, seed);
            m.psnr_y = o.psnr_y;
            m.ssim = o.ssim;
            m.seam_score = o.seam.score;
            m.invocations = o.stats.denoiser_invocations;
            m.wall_time_s = o.stats.wall_time_s;
            const double tile_px = static_cast<double>(cfg.tile_h) * task.latent_factor;
            m.est_memory_g = estimate_peak_memory(default_memory_model(), task.hr_size, task.hr_size,
                                                  std::pair{tile_px, tile_px});
        }
    } catch (const Error& e) {
        m.error = e.what();
    }
    return m;
}

int cmd_bench(const std::string& config_path, const std::string& out_name, const std::string& out_dir, int jobs,
              std::ostream& out, std::ostream& err) {
    const RunConfig rc = read_run_config(config_path);
    if (rc.bench.seeds < 1) throw UsageError("bench.seeds must be >= 1");
    const auto rows = bench_rows(rc);
    struct Cell {
        std::size_t row;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int s = 0; s < rc.bench.seeds; ++s) cells.push_back({r, rc.bench.first_seed + static_cast<std::uint64_t>(s)});
    }
    std::vector<MetricsRow> results(cells.size());
    const int pool = std::clamp(std::min(jobs, thread_cap()), 1, static_cast<int>(cells.size()));
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        for (int w = 0; w < pool; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < cells.size(); i = next++) {
                    results[i] = bench_cell(rc, rows[cells[i].row], cells[i].seed);
                }
            });
        }
    }
    // Output order is the cell order (row, then seed), independent of completion order.
    const fs::path csv = prepare_out(out_dir, out_name);
    std::ofstream f(csv);
    if (!f) throw IoError(csv.string() + ": cannot open for writing");
    write_metrics_header(f);
    int failures = 0;
    for (const auto& m : results) {
        write_metrics_row(f, m);
        if (!m.error.empty()) {
            ++failures;
            err << m.run_id << ": " << m.error << "\n";
        }
    }
    out << results.size() << " cells -> " << csv.string() << "\n";
    return failures ? kExitRuntime : kExitOk;
}

// ---- seammap ---------------------------------------------------------------

struct SeammapArgs {
    std::string in;
    int tile = 64;
    int factor = 1;
    int overlap = 0;
    int dx = 0;
    int dy = 0;
    double gain = 1.0;
    std::string out = "seammap.png";
    std::string out_dir = ".";
};

int cmd_seammap(const SeammapArgs& a, std::ostream& out) {
    if (a.factor < 1) throw UsageError("--factor must be >= 1");
    if (a.overlap > 0 && (a.dx || a.dy)) throw UsageError("--overlap cannot be combined with --dx/--dy");
    const Plane image = read_image(a.in);
    if (image.height() % a.factor || image.width() % a.factor) {
        throw DimensionError("image size not divisible by --factor " + std::to_string(a.factor));
    }
    const int lh = image.height() / a.factor;
    const int lw = image.width() / a.factor;
    const TilePlan plan = a.overlap > 0 ? plan_explicit(lh, lw, a.tile, a.tile, a.overlap)
                                        : plan_shifted(lh, lw, a.tile, a.tile, {a.dx, a.dy});
    const Plane lum = luminance(image);
    const auto owner = tile_owner_map(plan, a.factor);
    const int h = lum.height();
    const int w = lum.width();
    Plane map(h, w, 1, 0.0);
    const auto visit = [&](int y0, int x0, int y1, int x1) {
        if (owner[static_cast<std::size_t>(y0) * w + x0] == owner[static_cast<std::size_t>(y1) * w + x1]) return;
        const double g = a.gain * std::abs(lum.at(y0, x0) - lum.at(y1, x1));
        map.at(y0, x0) = std::max(map.at(y0, x0), g);
        map.at(y1, x1) = std::max(map.at(y1, x1), g);
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) visit(y, x, y, x + 1);
            if (y + 1 < h) visit(y, x, y + 1, x);
        }
    }
    const fs::path png = prepare_out(a.out_dir, a.out);
    write_image(png.string(), map);
    const SeamReport rep = seam_score(image, plan, a.factor);
    out << "seam score " << rep.score << " (boundary " << rep.boundary_grad << ", interior " << rep.interior_grad
        << (rep.no_boundary ? ", no tile boundary" : "") << ") -> " << png.string() << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Any-size diffusion toolkit: bucketing, tiled sampling, metrics"};
    app.require_subcommand(1);

    BucketArgs bucket;
    auto* sub_bucket = app.add_subcommand("bucket", "Assign manifest records to ratio buckets");
    sub_bucket->add_option("--manifest", bucket.manifest, "JSON-lines manifest")->required();
    sub_bucket->add_option("--table", bucket.table, "Ratio-size table JSON (default: built-in nine)");
    sub_bucket->add_option("--batch-size", bucket.batch_size)->check(CLI::PositiveNumber)->capture_default_str();
    sub_bucket->add_option("--seed", bucket.seed)->capture_default_str();
    sub_bucket->add_option("--out", bucket.out, "Bucket CSV file name")->capture_default_str();
    sub_bucket->add_option("--out-dir", bucket.out_dir)->capture_default_str();

    GenerateArgs gen;
    auto* sub_gen = app.add_subcommand("generate", "Full-frame sampling from the prior, decoded to PNG");
    sub_gen->add_option("--height", gen.height)->check(CLI::PositiveNumber)->capture_default_str();
    sub_gen->add_option("--width", gen.width)->check(CLI::PositiveNumber)->capture_default_str();
    sub_gen->add_option("--steps", gen.steps)->check(CLI::PositiveNumber)->capture_default_str();
    sub_gen->add_option("--seed", gen.seed)->capture_default_str();
    sub_gen->add_option("--factor", gen.factor, "Latent downsample factor")->capture_default_str();
    sub_gen->add_option("--sampler", gen.sampler, "ddim | ddpm")->capture_default_str();
    sub_gen->add_option("--eta", gen.eta)->capture_default_str();
    gen.denoiser.add(*sub_gen);
    sub_gen->add_option("--out", gen.out)->capture_default_str();
    sub_gen->add_option("--out-dir", gen.out_dir)->capture_default_str();

    UpscaleArgs up;
    auto* sub_up = app.add_subcommand("upscale", "Tiled super-resolution of a PNG");
    sub_up->add_option("--in", up.in, "Input PNG")->required();
    sub_up->add_option("--scale", up.scale)->check(CLI::PositiveNumber)->capture_default_str();
    sub_up->add_option("--strategy", up.strategy, "full | w/o | explicit | implicit")->capture_default_str();
    sub_up->add_option("--tile", up.tile, "Tile side in latent pixels")->capture_default_str();
    auto* opt_overlap = sub_up->add_option("--overlap", up.overlap, "Explicit overlap (latent pixels)");
    auto* opt_range = sub_up->add_option("--offset-range", up.offset_range, "Implicit offset range")
                          ->capture_default_str();
    auto* opt_mode = sub_up->add_option("--offset-mode", up.offset_mode, "fixed | random")->capture_default_str();
    sub_up->add_option("--steps", up.steps, "Sampling steps")->check(CLI::PositiveNumber)->capture_default_str();
    sub_up->add_option("--schedule-steps", up.schedule_steps, "Schedule length T")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub_up->add_option("--sampler", up.sampler, "ddim | ddpm")->capture_default_str();
    sub_up->add_option("--eta", up.eta)->capture_default_str();
    sub_up->add_option("--strength", up.strength, "Fraction of the chain to run, in (0, 1]")->capture_default_str();
    sub_up->add_option("--factor", up.factor, "Latent downsample factor")->capture_default_str();
    sub_up->add_option("--workers", up.workers, "Concurrent tiles per step")->capture_default_str();
    sub_up->add_option("--seed", up.seed)->capture_default_str();
    up.denoiser.add(*sub_up);
    sub_up->add_option("--out", up.out)->capture_default_str();
    sub_up->add_option("--out-dir", up.out_dir)->capture_default_str();

    std::string bench_config;
    std::string bench_out = "bench.csv";
    std::string bench_dir = ".";
    int bench_jobs = 1;
    auto* sub_bench = app.add_subcommand("bench", "Strategy x seed sweep from a JSON config");
    sub_bench->add_option("--config", bench_config, "Run config JSON")->required();
    sub_bench->add_option("--out", bench_out)->capture_default_str();
    sub_bench->add_option("--out-dir", bench_dir)->capture_default_str();
    sub_bench->add_option("--jobs", bench_jobs, "Parallel cells (capped by ASD_THREADS)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    SeammapArgs seam;
    auto* sub_seam = app.add_subcommand("seammap", "Render boundary gradients of a tile plan");
    sub_seam->add_option("--in", seam.in, "Input PNG")->required();
    sub_seam->add_option("--tile", seam.tile, "Tile side in latent pixels")->capture_default_str();
    sub_seam->add_option("--factor", seam.factor, "Latent-to-pixel factor")->capture_default_str();
    sub_seam->add_option("--overlap", seam.overlap, "Use an explicit plan with this overlap");
    sub_seam->add_option("--dx", seam.dx, "Shifted plan offset x");
    sub_seam->add_option("--dy", seam.dy, "Shifted plan offset y");
    sub_seam->add_option("--gain", seam.gain, "Brightness multiplier")->capture_default_str();
    sub_seam->add_option("--out", seam.out)->capture_default_str();
    sub_seam->add_option("--out-dir", seam.out_dir)->capture_default_str();

    std::vector<const char*> argv{"asd"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (sub_bucket->parsed()) return cmd_bucket(bucket, out, err);
        if (sub_gen->parsed()) return cmd_generate(gen, out);
        if (sub_up->parsed()) {
            up.overlap_given = opt_overlap->count() > 0;
            up.offset_given = opt_range->count() > 0 || opt_mode->count() > 0;
            return cmd_upscale(up, out);
        }
        if (sub_bench->parsed()) return cmd_bench(bench_config, bench_out, bench_dir, bench_jobs, out, err);
        if (sub_seam->parsed()) return cmd_seammap(seam, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace asd::cli
