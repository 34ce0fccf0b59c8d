#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "objmot/datasets.hpp"
#include "objmot/metrics.hpp"
#include "objmot/raster.hpp"

namespace objmot {

namespace fs = std::filesystem;

inline constexpr int kFormatVersion = 1;

// PNG helpers. Frames are 8-bit RGB, label maps 8-bit grayscale.
void write_png(const fs::path& path, const Frame& frame);
void write_png(const fs::path& path, const LabelMap& labels);
Frame read_png_frame(const fs::path& path);
/// ValidationError unless the file is an 8-bit single-channel image.
LabelMap read_png_labels(const fs::path& path);

std::string sequence_name(std::size_t index);       // seq_000042
std::string frame_name(std::string_view stem, int t);  // frame_007.png

struct SequenceEntry {
  std::size_t index = 0;
  std::string name;
  int length = 0;
  int height = 0;
  int width = 0;
  std::string digest;  // SHA-256 over frame and mask pixels

  friend bool operator==(const SequenceEntry&, const SequenceEntry&) = default;
};

struct Manifest {
  int format_version = kFormatVersion;
  std::string generator_version;
  std::optional<DatasetConfig> config;
  std::string config_hash;
  std::vector<SequenceEntry> sequences;
};

struct SequenceMeta {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  int length = 0;
  int height = 0;
  int width = 0;
  std::vector<int> object_ids;
  std::vector<int> background_ids;
  std::vector<std::vector<bool>> visibility;
  std::optional<SceneSpec> scene;
  std::optional<Crossing> crossing;

  int object_count() const { return static_cast<int>(object_ids.size()); }
};

/// Pixel digest of a rendered sequence; changes iff any stored pixel changes.
std::string content_digest(const std::vector<Frame>& frames, const std::vector<LabelMap>& gt);

/// Writes sequences of one dataset. `write_sequence` may be called
/// concurrently for distinct indices; `finish` writes manifest.json last.
class DatasetWriter {
 public:
  DatasetWriter(fs::path root, std::optional<DatasetConfig> config);

  SequenceEntry write_sequence(std::size_t index, const VideoSample& video) const;
  Manifest finish(std::vector<SequenceEntry> entries) const;

  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::optional<DatasetConfig> config_;
};

Manifest write_dataset(const std::vector<VideoSample>& samples, const fs::path& root,
                       const std::optional<DatasetConfig>& config = std::nullopt);

/// Generate and write a dataset with `workers` threads. Identical bytes for
/// every worker count.
Manifest generate_and_write(const DatasetConfig& config, const fs::path& root, int workers = 1);

Manifest read_manifest(const fs::path& root);

struct SequenceRecord {
  SequenceMeta meta;
  VideoSample video;
};

SequenceRecord read_sequence(const fs::path& root, const SequenceEntry& entry);

struct PredictionMeta {
  std::string producer = "unknown";
  std::vector<int> background_ids;
  bool exclude_background = false;
  std::string parameters;  // free-form producer settings

  friend bool operator==(const PredictionMeta&, const PredictionMeta&) = default;
};

struct PredictionSet {
  std::vector<LabelMap> labels;
  std::vector<Frame> reconstructions;  // empty when not provided
  PredictionMeta meta;
};

void write_prediction_sequence(const fs::path& root, const SequenceEntry& entry, const PredictionSet& predictions);

/// Validates one sequence of predictions against its manifest entry.
/// Errors name the offending file relative to `root`.
PredictionSet read_prediction_sequence(const fs::path& root, const SequenceEntry& entry);

std::vector<PredictionSet> read_predictions(const fs::path& root, const Manifest& expected);

enum class ReportFormat { json, csv, markdown };

ReportFormat report_format_from_string(std::string_view s);

std::string write_report(const MetricsReport& report, ReportFormat format);
MetricsReport report_from_json(std::string_view text);

}  // namespace objmot
