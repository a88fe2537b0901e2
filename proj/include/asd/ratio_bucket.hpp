#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "asd/plane.hpp"
#include "asd/rng.hpp"

namespace asd {

/// One aspect-ratio bucket: ratio = height / width and its canonical size.
struct RatioSize {
    double ratio;
    int height;
    int width;
};

/// Ordered bucket list. Order matters: nearest_bucket breaks ties in favour
/// of the later entry.
class RatioSizeTable {
public:
    /// Throws ConfigError when empty, when a size is non-positive, or when a
    /// listed ratio differs from height / width by more than 1e-3.
    explicit RatioSizeTable(std::vector<RatioSize> entries);

    const std::vector<RatioSize>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// 1-based access matching bucket indices.
    const RatioSize& bucket(int index) const { return entries_.at(static_cast<std::size_t>(index - 1)); }

private:
    std::vector<RatioSize> entries_;
};

/// The nine-entry multi-aspect table, in its canonical order.
RatioSizeTable default_table();

/// Reads a table from JSON: [{"ratio": r, "height": h, "width": w}, ...].
RatioSizeTable read_table_json(const std::string& path);

struct BucketChoice {
    int index;  // 1-based
    int height;
    int width;

    friend bool operator==(const BucketChoice&, const BucketChoice&) = default;
};

/// Scans the table in order and keeps the running best whenever
/// |h/w - r_i| <= best, so the last of several equidistant entries wins.
BucketChoice nearest_bucket(int height, int width, const RatioSizeTable& table);

/// Bilinear resize to the bucket size; aspect distortion is accepted, nothing
/// is cropped.
Plane resize_to_bucket(const Plane& image, int height, int width);

struct ManifestRecord {
    std::string id;
    int height = 0;
    int width = 0;
    std::string path;
};

class DatasetManifest {
public:
    DatasetManifest() = default;
    /// Throws ConfigError on duplicate ids or non-positive sizes.
    explicit DatasetManifest(std::vector<ManifestRecord> records);

    const std::vector<ManifestRecord>& records() const noexcept { return records_; }
    bool empty() const noexcept { return records_.empty(); }
    std::size_t size() const noexcept { return records_.size(); }
    const ManifestRecord& find(const std::string& id) const;

private:
    std::vector<ManifestRecord> records_;
};

/// JSON lines, one {"id","height","width","path"} object per line. Blank
/// lines are skipped. Errors are IoError messages of the form
/// "<source>:<line>: <reason>".
DatasetManifest parse_manifest_jsonl(std::istream& in, const std::string& source = "<stream>");
DatasetManifest read_manifest_jsonl(const std::string& path);

struct Batch {
    int bucket_index;
    std::vector<std::string> ids;
    bool partial;
};

/// Assigns each record to its nearest bucket, shuffles each bucket with
/// `rng` (Fisher-Yates on Rng::bounded), and cuts batches of `batch_size`.
/// Buckets are emitted in table order; a short trailing batch is kept and
/// flagged partial.
std::vector<Batch> group_batches(const DatasetManifest& manifest, const RatioSizeTable& table,
                                 int batch_size, Rng& rng);

/// CSV with header "id,bucket_index,target_h,target_w", records in manifest order.
void write_bucket_csv(std::ostream& out, const DatasetManifest& manifest, const RatioSizeTable& table);

/// CSV with header "batch,bucket_index,size,partial,ids"; ids joined by ';'.
void write_batch_csv(std::ostream& out, const std::vector<Batch>& batches);

}  // namespace asd
