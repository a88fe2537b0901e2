#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asd/cli.hpp"
#include "asd/png_io.hpp"
#include "asd/ratio_bucket.hpp"
#include "asd/rng.hpp"

using namespace asd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "asd_test_cli" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

fs::path noise_png(const fs::path& dir, int h, int w, std::uint64_t seed) {
    Rng rng(seed);
    Plane p(h, w, 3);
    for (auto& v : p.data()) v = 0.3 + 0.4 * rng.uniform();
    const fs::path path = dir / ("in" + std::to_string(seed) + ".png");
    write_image(path.string(), p);
    return path;
}

}  // namespace

TEST_CASE("cli: usage errors exit 1") {
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"paint"}).code == cli::kExitUsage);
    CHECK(run_cli({"generate", "--bogus"}).code == cli::kExitUsage);
    CHECK(run_cli({"generate", "--height", "-8"}).code == cli::kExitUsage);
    CHECK(run_cli({"bucket"}).code == cli::kExitUsage);
    CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("cli bucket: empty manifest") {
    const auto dir = fresh_dir("bucket_empty");
    write_file(dir / "m.jsonl", "\n");
    const auto r = run_cli({"bucket", "--manifest", (dir / "m.jsonl").string(), "--out-dir", dir.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.err.find("no records") != std::string::npos);
    CHECK(slurp(dir / "buckets.csv") == "id,bucket_index,target_h,target_w\n");
    CHECK(slurp(dir / "buckets_batches.csv") == "batch,bucket_index,size,partial,ids\n");
}

TEST_CASE("cli bucket: table sizes map to themselves") {
    const auto dir = fresh_dir("bucket_self");
    const auto table = default_table();
    std::string manifest;
    for (int i = 1; i <= table.size(); ++i) {
        const auto& b = table.bucket(i);
        manifest += nlohmann::json{{"id", "b" + std::to_string(i)}, {"height", b.height}, {"width", b.width}}.dump() + "\n";
    }
    write_file(dir / "m.jsonl", manifest);
    const auto r = run_cli({"bucket", "--manifest", (dir / "m.jsonl").string(), "--out-dir", dir.string(),
                            "--out", "b.csv", "--batch-size", "2"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = lines(slurp(dir / "b.csv"));
    REQUIRE(rows.size() == static_cast<std::size_t>(table.size()) + 1);
    for (int i = 1; i <= table.size(); ++i) {
        const auto& b = table.bucket(i);
        CHECK(rows[static_cast<std::size_t>(i)] == "b" + std::to_string(i) + "," + std::to_string(i) + "," +
                                                         std::to_string(b.height) + "," + std::to_string(b.width));
    }
    CHECK(lines(r.out).size() == static_cast<std::size_t>(table.size()) + 1);
    CHECK(lines(slurp(dir / "b_batches.csv")).size() == static_cast<std::size_t>(table.size()) + 1);
}

TEST_CASE("cli bucket: counts add up and bad records fail") {
    const auto dir = fresh_dir("bucket_count");
    std::string manifest;
    for (int i = 0; i < 20; ++i)
        manifest += nlohmann::json{{"id", "r" + std::to_string(i)}, {"height", 300 + 37 * i}, {"width", 900 - 20 * i}}.dump() + "\n";
    write_file(dir / "m.jsonl", manifest);
    const auto r = run_cli({"bucket", "--manifest", (dir / "m.jsonl").string(), "--out-dir", dir.string()});
    REQUIRE(r.code == cli::kExitOk);
    long total = 0;
    for (const auto& l : lines(r.out))
        if (l.rfind("bucket ", 0) == 0) total += std::stol(l.substr(l.rfind(' ') + 1));
    CHECK(total == 20);
    write_file(dir / "bad.jsonl", "{\"id\": \"x\", \"height\": 10, \"width\": 10, \"colour\": 1}\n");
    CHECK(run_cli({"bucket", "--manifest", (dir / "bad.jsonl").string(), "--out-dir", dir.string()}).code ==
          cli::kExitRuntime);
}

TEST_CASE("cli generate is reproducible") {
    const auto dir = fresh_dir("generate");
    const std::vector<std::string> base{"generate", "--height", "64", "--width", "96", "--steps", "10",
                                        "--out-dir", dir.string()};
    auto args = base;
    args.insert(args.end(), {"--seed", "3", "--out", "a.png"});
    REQUIRE(run_cli(args).code == cli::kExitOk);
    args = base;
    args.insert(args.end(), {"--seed", "3", "--out", "b.png"});
    REQUIRE(run_cli(args).code == cli::kExitOk);
    args = base;
    args.insert(args.end(), {"--seed", "4", "--out", "c.png"});
    REQUIRE(run_cli(args).code == cli::kExitOk);
    CHECK(slurp(dir / "a.png") == slurp(dir / "b.png"));
    CHECK(slurp(dir / "a.png") != slurp(dir / "c.png"));
    const Plane img = read_image((dir / "a.png").string());
    CHECK(img.height() == 64);
    CHECK(img.width() == 96);
    const auto side = nlohmann::json::parse(slurp(dir / "a.json"));
    CHECK(side["stats"]["denoiser_invocations"] == 10);
}

TEST_CASE("cli generate rejects bad sizes and options") {
    const auto dir = fresh_dir("generate_bad");
    const auto r = run_cli({"generate", "--height", "100", "--width", "64", "--out-dir", dir.string()});
    CHECK(r.code == cli::kExitRuntime);
    CHECK(r.err.find("divisible") != std::string::npos);
    CHECK(run_cli({"generate", "--sampler", "euler", "--out-dir", dir.string()}).code == cli::kExitUsage);
    CHECK(run_cli({"generate", "--height", "64", "--width", "64", "--sampler", "ddpm", "--steps", "10",
                   "--eta", "-1", "--out-dir", dir.string()})
              .code == cli::kExitUsage);
}

TEST_CASE("cli upscale output and reports") {
    const auto dir = fresh_dir("upscale");
    const auto in = noise_png(dir, 64, 64, 1);
    const auto r = run_cli({"upscale", "--in", in.string(), "--steps", "5", "--out-dir", dir.string()});
    REQUIRE(r.code == cli::kExitOk);
    const Plane img = read_image((dir / "upscaled.png").string());
    CHECK(img.height() == 256);
    CHECK(img.width() == 256);
    const auto stats = nlohmann::json::parse(slurp(dir / "upscaled.json"));
    CHECK(stats["denoiser_invocations"] == 5 * 16);
    const auto rows = lines(slurp(dir / "upscaled_metrics.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("upscaled,implicit&random,", 0) == 0);
}

TEST_CASE("cli upscale with a zero offset range equals disjoint") {
    const auto dir = fresh_dir("upscale_zero");
    const auto in = noise_png(dir, 32, 32, 2);
    const std::vector<std::string> base{"upscale", "--in", in.string(), "--tile", "32", "--steps", "6",
                                        "--eta", "0.5", "--out-dir", dir.string()};
    auto a = base;
    a.insert(a.end(), {"--strategy", "w/o", "--out", "w.png"});
    auto b = base;
    b.insert(b.end(), {"--strategy", "implicit", "--offset-range", "0", "--out", "i.png"});
    REQUIRE(run_cli(a).code == cli::kExitOk);
    REQUIRE(run_cli(b).code == cli::kExitOk);
    CHECK(slurp(dir / "w.png") == slurp(dir / "i.png"));
    auto ja = nlohmann::json::parse(slurp(dir / "w.json"));
    auto jb = nlohmann::json::parse(slurp(dir / "i.json"));
    CHECK(ja["denoiser_invocations"] == jb["denoiser_invocations"]);
    CHECK(ja["per_step_offsets"] == jb["per_step_offsets"]);
}

TEST_CASE("cli upscale invalid flag combinations") {
    const auto dir = fresh_dir("upscale_bad");
    const auto in = noise_png(dir, 16, 16, 3);
    const auto run_with = [&](std::vector<std::string> extra) {
        std::vector<std::string> a{"upscale", "--in", in.string(), "--steps", "2", "--out-dir", dir.string()};
        a.insert(a.end(), extra.begin(), extra.end());
        return run_cli(a).code;
    };
    CHECK(run_with({"--strategy", "implicit", "--overlap", "8"}) == cli::kExitUsage);
    CHECK(run_with({"--strategy", "explicit", "--offset-range", "8"}) == cli::kExitUsage);
    CHECK(run_with({"--strategy", "w/o", "--offset-mode", "fixed"}) == cli::kExitUsage);
    CHECK(run_with({"--strategy", "explicit", "--overlap", "64"}) == cli::kExitUsage);
    CHECK(run_with({"--strategy", "diagonal"}) == cli::kExitUsage);
    CHECK(run_with({"--strength", "0"}) == cli::kExitRuntime);
    CHECK(run_with({"--factor", "3"}) == cli::kExitRuntime);
    CHECK(run_cli({"upscale", "--in", (dir / "missing.png").string(), "--out-dir", dir.string()}).code ==
          cli::kExitRuntime);
}

TEST_CASE("cli seammap") {
    const auto dir = fresh_dir("seammap");
    write_image((dir / "flat.png").string(), Plane(64, 64, 3, 0.5));
    auto r = run_cli({"seammap", "--in", (dir / "flat.png").string(), "--tile", "32", "--out-dir", dir.string()});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.rfind("seam score 1 ", 0) == 0);
    const Plane map = read_image((dir / "seammap.png").string());
    CHECK(map == Plane(64, 64, 3, 0.0));

    Rng rng(4);
    Plane step(64, 64, 3);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            for (int c = 0; c < 3; ++c) step.at(y, x, c) = (x < 32 ? 0.3 : 0.7) + 0.02 * rng.uniform();
    write_image((dir / "step.png").string(), step);
    r = run_cli({"seammap", "--in", (dir / "step.png").string(), "--tile", "32", "--out", "s.png", "--out-dir",
                 dir.string()});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(std::stod(r.out.substr(11)) > 2.0);
    const Plane smap = read_image((dir / "s.png").string());
    CHECK(smap.at(10, 32, 0) > 0.3);
    CHECK(smap.at(10, 10, 0) == 0.0);

    CHECK(run_cli({"seammap", "--in", (dir / "flat.png").string(), "--overlap", "8", "--dx", "2", "--out-dir",
                   dir.string()})
              .code == cli::kExitUsage);
    CHECK(run_cli({"seammap", "--in", (dir / "flat.png").string(), "--factor", "3", "--out-dir", dir.string()})
              .code == cli::kExitRuntime);
}

TEST_CASE("cli bench") {
    const auto dir = fresh_dir("bench");
    write_file(dir / "cfg.json", R"({
  "sample": {"tile_h": 16, "tile_w": 16, "steps": 4},
  "denoiser": {"kind": "iid_exact", "kernel": []},
  "schedule": {"steps": 20},
  "bench": {"task": "latent", "seeds": 2, "first_seed": 7, "latent_h": 32, "latent_w": 48,
            "channels": 2, "overlap": 4, "offset_range": 8}
})");
    const auto r = run_cli({"bench", "--config", (dir / "cfg.json").string(), "--out-dir", dir.string(), "--jobs", "3"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = lines(slurp(dir / "bench.csv"));
    REQUIRE(rows.size() == 9);
    const std::vector<std::string> ids{"w/o-s7", "w/o-s8", "explicit-s7", "explicit-s8", "implicit&fixed-s7",
                                       "implicit&fixed-s8", "implicit&random-s7", "implicit&random-s8"};
    for (std::size_t i = 0; i < ids.size(); ++i) CHECK(rows[i + 1].rfind(ids[i] + ",", 0) == 0);
    // 2x3 tiles per step for disjoint and implicit; explicit at stride 12 gives 3x4
    CHECK(rows[1].find(",24,") != std::string::npos);
    CHECK(rows[3].find(",48,") != std::string::npos);
    CHECK(rows[7].find(",24,") != std::string::npos);

    write_file(dir / "bad.json", R"({"bench": {"seeds": 1, "tasks": "sr"}})");
    CHECK(run_cli({"bench", "--config", (dir / "bad.json").string(), "--out-dir", dir.string()}).code ==
          cli::kExitRuntime);
    // a cell error is reported in its row and in the exit code
    write_file(dir / "big.json", R"({"sample": {"tile_h": 64, "tile_w": 64, "steps": 2},
  "denoiser": {"kind": "iid_exact", "kernel": []}, "schedule": {"steps": 10},
  "bench": {"latent_h": 32, "latent_w": 32, "channels": 1, "overlap": 4, "offset_range": 8}})");
    const auto e = run_cli({"bench", "--config", (dir / "big.json").string(), "--out", "e.csv", "--out-dir", dir.string()});
    CHECK(e.code == cli::kExitRuntime);
    const auto erows = lines(slurp(dir / "e.csv"));
    REQUIRE(erows.size() == 5);
    CHECK(erows[1].find("larger than canvas") != std::string::npos);
}
