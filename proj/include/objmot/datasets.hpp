#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "objmot/raster.hpp"
#include "objmot/scene.hpp"

namespace objmot {

inline constexpr std::string_view kGeneratorVersion = "objmot-gen/1.0.0";

enum class Family { vmds, spmot };
enum class Split { train, val, test };

std::string_view to_string(Family f);
std::string_view to_string(Split s);
Family family_from_string(std::string_view s);
Split split_from_string(std::string_view s);

struct DatasetConfig {
  Family family = Family::vmds;
  Variant variant = Variant::standard;
  Split split = Split::train;
  int num_sequences = 0;
  int length = 10;
  Canvas canvas{64, 64};  // render resolution
  int output_size = 64;   // stored resolution; render is box-downsampled to it
  std::uint64_t seed = 0;
  bool black_background = false;

  void validate() const;
  int downsample_factor() const { return canvas.width / output_size; }
  /// Canonical serialization; key order is stable.
  std::string canonical() const;
  /// SHA-256 over the canonical form and the generator version.
  std::string hash() const;
};

DatasetConfig default_config(Family family, Variant variant, Split split);

/// Scene for sequence `index`, seeded from split_seed(config.seed, index, ...).
SceneSpec generate_scene(const DatasetConfig& config, std::size_t index);

VideoSample generate_sequence(const DatasetConfig& config, std::size_t index);

/// Streams samples to `sink` in index order. Work is spread over `workers`
/// threads; output is identical for any worker count.
void generate_dataset(const DatasetConfig& config, int workers,
                      const std::function<void(std::size_t, VideoSample&&)>& sink);

std::vector<VideoSample> generate_dataset(const DatasetConfig& config, int workers = 1);

}  // namespace objmot
