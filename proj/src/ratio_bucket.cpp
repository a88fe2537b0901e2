#include "asd/ratio_bucket.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "asd/image_ops.hpp"

namespace asd {

RatioSizeTable::RatioSizeTable(std::vector<RatioSize> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ConfigError("ratio-size table is empty");
    for (const auto& e : entries_) {
        if (e.height < 1 || e.width < 1) throw ConfigError("ratio-size table has a non-positive size");
        const double actual = static_cast<double>(e.height) / e.width;
        if (std::abs(actual - e.ratio) > 1e-3) {
            throw ConfigError("ratio " + std::to_string(e.ratio) + " does not match size " +
                              std::to_string(e.height) + "x" + std::to_string(e.width));
        }
    }
}

RatioSizeTable default_table() {
    // Ratios are rounded (1.333, 1.7778), not exact h / w.
    return RatioSizeTable({
        {1.0, 512, 512},
        {0.75, 576, 768},
        {1.333, 768, 576},
        {0.5625, 576, 1024},
        {1.7778, 1024, 576},
        {0.625, 640, 1024},
        {1.6, 1024, 640},
        {0.5, 512, 1024},
        {2.0, 1024, 512},
    });
}

RatioSizeTable read_table_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open ratio-size table");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    if (!doc.is_array()) throw IoError(path + ": expected a JSON array of buckets");
    std::vector<RatioSize> entries;
    for (const auto& item : doc) {
        try {
            entries.push_back({item.at("ratio").get<double>(), item.at("height").get<int>(),
                               item.at("width").get<int>()});
        } catch (const nlohmann::json::exception& e) {
            throw IoError(path + ": " + e.what());
        }
    }
    return RatioSizeTable(std::move(entries));
}

BucketChoice nearest_bucket(int height, int width, const RatioSizeTable& table) {
    if (height < 1 || width < 1) throw DimensionError("nearest_bucket: image size must be positive");
    const double r = static_cast<double>(height) / width;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    const auto& entries = table.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const double distance = std::abs(r - entries[i].ratio);
        if (distance <= best) {
            best = distance;
            best_index = i;
        }
    }
    const auto& e = entries[best_index];
    return {static_cast<int>(best_index) + 1, e.height, e.width};
}

Plane resize_to_bucket(const Plane& image, int height, int width) {
    return resize_bilinear(image, height, width);
}

DatasetManifest::DatasetManifest(std::vector<ManifestRecord> records) : records_(std::move(records)) {
    std::set<std::string> seen;
    for (const auto& r : records_) {
        if (r.height < 1 || r.width < 1) throw ConfigError("manifest record '" + r.id + "' has non-positive size");
        if (!seen.insert(r.id).second) throw ConfigError("duplicate manifest id '" + r.id + "'");
    }
}

const ManifestRecord& DatasetManifest::find(const std::string& id) const {
    for (const auto& r : records_) {
        if (r.id == id) return r;
    }
    throw ConfigError("no manifest record with id '" + id + "'");
}

DatasetManifest parse_manifest_jsonl(std::istream& in, const std::string& source) {
    std::vector<ManifestRecord> records;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        ManifestRecord rec;
        try {
            const auto obj = nlohmann::json::parse(line);
            if (!obj.is_object()) throw IoError(where + "expected a JSON object");
            for (const auto& [key, value] : obj.items()) {
                if (key != "id" && key != "height" && key != "width" && key != "path") {
                    throw IoError(where + "unknown key '" + key + "'");
                }
            }
            rec.id = obj.at("id").get<std::string>();
            rec.height = obj.at("height").get<int>();
            rec.width = obj.at("width").get<int>();
            rec.path = obj.value("path", std::string{});
        } catch (const nlohmann::json::exception& e) {
            throw IoError(where + e.what());
        }
        if (rec.height < 1 || rec.width < 1) throw IoError(where + "height and width must be >= 1");
        if (!seen.insert(rec.id).second) throw IoError(where + "duplicate id '" + rec.id + "'");
        records.push_back(std::move(rec));
    }
    return DatasetManifest(std::move(records));
}

DatasetManifest read_manifest_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open manifest");
    return parse_manifest_jsonl(in, path);
}

std::vector<Batch> group_batches(const DatasetManifest& manifest, const RatioSizeTable& table,
                                 int batch_size, Rng& rng) {
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    std::map<int, std::vector<std::string>> by_bucket;
    for (const auto& r : manifest.records()) {
        by_bucket[nearest_bucket(r.height, r.width, table).index].push_back(r.id);
    }
    std::vector<Batch> batches;
    for (auto& [bucket, ids] : by_bucket) {
        for (std::size_t i = ids.size(); i > 1; --i) {
            const auto j = rng.bounded(static_cast<std::uint32_t>(i));
            std::swap(ids[i - 1], ids[j]);
        }
        for (std::size_t start = 0; start < ids.size(); start += static_cast<std::size_t>(batch_size)) {
            const std::size_t stop = std::min(ids.size(), start + static_cast<std::size_t>(batch_size));
            Batch b{bucket, {ids.begin() + static_cast<std::ptrdiff_t>(start),
                             ids.begin() + static_cast<std::ptrdiff_t>(stop)},
                    stop - start < static_cast<std::size_t>(batch_size)};
            batches.push_back(std::move(b));
        }
    }
    return batches;
}

void write_bucket_csv(std::ostream& out, const DatasetManifest& manifest, const RatioSizeTable& table) {
    out << "id,bucket_index,target_h,target_w\n";
    for (const auto& r : manifest.records()) {
        const auto b = nearest_bucket(r.height, r.width, table);
        out << r.id << ',' << b.index << ',' << b.height << ',' << b.width << '\n';
    }
}

void write_batch_csv(std::ostream& out, const std::vector<Batch>& batches) {
    out << "batch,bucket_index,size,partial,ids\n";
    for (std::size_t i = 0; i < batches.size(); ++i) {
        const auto& b = batches[i];
        out << i << ',' << b.bucket_index << ',' << b.ids.size() << ',' << (b.partial ? 1 : 0) << ',';
        for (std::size_t k = 0; k < b.ids.size(); ++k) out << (k ? ";" : "") << b.ids[k];
        out << '\n';
    }
}

}  // namespace asd
