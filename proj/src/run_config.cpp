#include "asd/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace asd {

DenoiserSpec DenoiserConfig::build() const {
    DenoiserSpec spec;
    spec.kind = kind;
    spec.prior.mean = mean;
    spec.prior.sigma = sigma;
    spec.prior.kernel = kernel;
    spec.prior.boundary = boundary;
    spec.tile_pad = tile_pad;
    spec.validate();
    return spec;
}

namespace {

using nlohmann::json;

std::string_view to_string(BoundaryMode m) { return m == BoundaryMode::reflect ? "reflect" : "circular"; }

BoundaryMode parse_boundary(std::string_view s) {
    if (s == "reflect") return BoundaryMode::reflect;
    if (s == "circular") return BoundaryMode::circular;
    throw ConfigError("unknown boundary mode '" + std::string(s) + "' (reflect | circular)");
}

std::string_view to_string(BenchTask t) { return t == BenchTask::latent ? "latent" : "sr"; }

BenchTask parse_bench_task(std::string_view s) {
    if (s == "latent") return BenchTask::latent;
    if (s == "sr") return BenchTask::sr;
    throw ConfigError("unknown bench task '" + std::string(s) + "' (latent | sr)");
}

// Reads keys of one JSON object, rejecting any key it was not asked about.
class Section {
public:
    Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    void done() const {
        for (const auto& [key, _] : doc_.items()) {
            if (!seen_.contains(key)) throw ConfigError(path_ + "." + key + ": unknown key");
        }
    }

    template <typename T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        auto it = doc_.find(key);
        if (it == doc_.end()) return;
        try {
            out = it->template get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(path_ + "." + key + ": " + e.what());
        }
    }

    template <typename T, typename Parse>
    void get_enum(const char* key, T& out, Parse parse) {
        std::string name;
        get(key, name);
        if (!name.empty()) out = parse(name);
    }

    const json* child(const char* key) {
        seen_.insert(key);
        auto it = doc_.find(key);
        return it == doc_.end() ? nullptr : &*it;
    }

private:
    const json& doc_;
    std::string path_;
    std::set<std::string> seen_;
};

}  // namespace

json to_json(const RunConfig& cfg) {
    const auto& s = cfg.sample;
    const auto& d = cfg.denoiser;
    const auto& b = cfg.bench;
    return {
        {"sample",
         {{"strategy", to_string(s.strategy)},
          {"tile_h", s.tile_h},
          {"tile_w", s.tile_w},
          {"overlap", s.overlap},
          {"offset_range", s.offset_range},
          {"offset_mode", to_string(s.offset_mode)},
          {"steps", s.steps},
          {"sampler", to_string(s.sampler)},
          {"eta", s.eta},
          {"seed", s.seed},
          {"workers", s.workers}}},
        {"denoiser",
         {{"kind", to_string(d.kind)},
          {"mean", d.mean},
          {"sigma", d.sigma},
          {"kernel", d.kernel},
          {"boundary", to_string(d.boundary)},
          {"tile_pad", d.tile_pad}}},
        {"schedule",
         {{"steps", cfg.schedule.steps}, {"beta_min", cfg.schedule.beta_min}, {"beta_max", cfg.schedule.beta_max}}},
        {"bench",
         {{"task", to_string(b.task)},
          {"seeds", b.seeds},
          {"first_seed", b.first_seed},
          {"latent_h", b.latent_h},
          {"latent_w", b.latent_w},
          {"channels", b.channels},
          {"hr_size", b.hr_size},
          {"scale", b.scale},
          {"latent_factor", b.latent_factor},
          {"strength", b.strength},
          {"overlap", b.overlap},
          {"offset_range", b.offset_range}}},
        {"manifest", cfg.manifest},
        {"table", cfg.table},
    };
}

RunConfig run_config_from_json(const json& doc) {
    RunConfig cfg;
    Section root(doc, "config");
    if (const json* j = root.child("sample")) {
        Section sec(*j, "sample");
        auto& s = cfg.sample;
        sec.get_enum("strategy", s.strategy, parse_strategy);
        sec.get("tile_h", s.tile_h);
        sec.get("tile_w", s.tile_w);
        sec.get("overlap", s.overlap);
        sec.get("offset_range", s.offset_range);
        sec.get_enum("offset_mode", s.offset_mode, parse_offset_mode);
        sec.get("steps", s.steps);
        sec.get_enum("sampler", s.sampler, parse_sampler_kind);
        sec.get("eta", s.eta);
        sec.get("seed", s.seed);
        sec.get("workers", s.workers);
        sec.done();
    }
    if (const json* j = root.child("denoiser")) {
        Section sec(*j, "denoiser");
        auto& d = cfg.denoiser;
        sec.get_enum("kind", d.kind, parse_denoiser_kind);
        sec.get("mean", d.mean);
        sec.get("sigma", d.sigma);
        sec.get("kernel", d.kernel);
        sec.get_enum("boundary", d.boundary, parse_boundary);
        sec.get("tile_pad", d.tile_pad);
        sec.done();
    }
    if (const json* j = root.child("schedule")) {
        Section sec(*j, "schedule");
        sec.get("steps", cfg.schedule.steps);
        sec.get("beta_min", cfg.schedule.beta_min);
        sec.get("beta_max", cfg.schedule.beta_max);
        sec.done();
    }
    if (const json* j = root.child("bench")) {
        Section sec(*j, "bench");
        auto& b = cfg.bench;
        sec.get_enum("task", b.task, parse_bench_task);
        sec.get("seeds", b.seeds);
        sec.get("first_seed", b.first_seed);
        sec.get("latent_h", b.latent_h);
        sec.get("latent_w", b.latent_w);
        sec.get("channels", b.channels);
        sec.get("hr_size", b.hr_size);
        sec.get("scale", b.scale);
        sec.get("latent_factor", b.latent_factor);
        sec.get("strength", b.strength);
        sec.get("overlap", b.overlap);
        sec.get("offset_range", b.offset_range);
        sec.done();
    }
    root.get("manifest", cfg.manifest);
    root.get("table", cfg.table);
    root.done();
    return cfg;
}

RunConfig parse_run_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return run_config_from_json(doc);
}

RunConfig read_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open config");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_run_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string print_run_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

}  // namespace asd
