#include "objmot/datasets.hpp"

#include "json.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "objmot/digest.hpp"
#include "objmot/parallel.hpp"

namespace objmot {

namespace {

bool is_vmds_only(Variant v) { return v != Variant::standard; }

std::optional<OodKind> ood_kind(Variant v) {
  switch (v) {
    case Variant::rotation: return OodKind::rotation;
    case Variant::color_change: return OodKind::color_change;
    case Variant::size_change: return OodKind::size_change;
    default: return std::nullopt;
  }
}

template <typename E>
[[noreturn]] void rethrow_with_index(const E& e, std::size_t index) {
  throw E("sequence " + std::to_string(index) + ": " + e.what());
}

}  // namespace

std::string_view to_string(Family f) { return f == Family::vmds ? "vmds" : "spmot"; }

std::string_view to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    default: return "test";
  }
}

Family family_from_string(std::string_view s) {
  if (s == "vmds") return Family::vmds;
  if (s == "spmot") return Family::spmot;
  throw InvalidParameter("unknown family '" + std::string(s) + "'");
}

Split split_from_string(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "val") return Split::val;
  if (s == "test") return Split::test;
  throw InvalidParameter("unknown split '" + std::string(s) + "'");
}

void DatasetConfig::validate() const {
  if (family == Family::spmot && is_vmds_only(variant))
    throw InvalidParameter("variant '" + std::string(to_string(variant)) + "' is only defined for vmds");
  if (length < 1) throw InvalidParameter("length must be >= 1");
  if (num_sequences < 0) throw InvalidParameter("num_sequences must be >= 0");
  if (canvas.height != canvas.width) throw InvalidParameter("canvas must be square");
  if (output_size < 1 || canvas.width % output_size != 0)
    throw InvalidParameter("render canvas must be a multiple of the output size");
}

std::string DatasetConfig::canonical() const {
  nlohmann::json j{
      {"family", to_string(family)},
      {"variant", to_string(variant)},
      {"split", to_string(split)},
      {"num_sequences", num_sequences},
      {"length", length},
      {"canvas", canvas.width},
      {"output_size", output_size},
      {"seed", seed},
      {"black_background", black_background},
  };
  return j.dump();
}

std::string DatasetConfig::hash() const {
  return sha256_hex(std::string(kGeneratorVersion) + "\n" + canonical());
}

DatasetConfig default_config(Family family, Variant variant, Split split) {
  DatasetConfig c;
  c.family = family;
  c.variant = variant;
  c.split = split;
  if (family == Family::spmot) {
    if (is_vmds_only(variant))
      throw InvalidParameter("variant '" + std::string(to_string(variant)) + "' is only defined for vmds");
    c.num_sequences = split == Split::train ? 9600 : split == Split::val ? 384 : 1000;
    c.length = 10;
    c.canvas = {128, 128};
    c.output_size = 64;
    c.black_background = true;
    return c;
  }
  c.canvas = {64, 64};
  c.output_size = 64;
  if (variant == Variant::standard) {
    c.num_sequences = split == Split::train ? 10000 : 1000;
    c.length = split == Split::test ? 20 : 10;
  } else {
    c.num_sequences = 1000;
    c.length = 10;
  }
  return c;
}

SceneSpec generate_scene(const DatasetConfig& config, std::size_t index) {
  Rng rng = make_rng(config.seed, index, 0, StreamTag::scene);
  if (config.family == Family::spmot) return build_spmot_scene(rng, config.length, config.canvas);

  VmdsOptions opts;
  opts.canvas = config.canvas;
  opts.black_background = config.black_background;
  SceneSpec scene = build_vmds_scene(rng, config.length, config.variant, opts);
  if (auto kind = ood_kind(config.variant)) {
    Rng ood = make_rng(config.seed, index, 0, StreamTag::ood);
    scene = apply_ood_schedule(scene, *kind, ood);
  }
  return scene;
}

VideoSample generate_sequence(const DatasetConfig& config, std::size_t index) {
  config.validate();
  try {
    VideoSample video = render_video(generate_scene(config, index));
    video.seed = split_seed(config.seed, index);
    const int factor = config.downsample_factor();
    if (factor > 1) video = downsample(video, factor);
    return video;
  } catch (const GenerationExhausted& e) {
    throw GenerationExhausted("sequence " + std::to_string(index) + ": " + e.what(), e.rejects());
  } catch (const NumericalError& e) {
    rethrow_with_index(e, index);
  } catch (const InvalidParameter& e) {
    rethrow_with_index(e, index);
  }
}

void generate_dataset(const DatasetConfig& config, int workers,
                      const std::function<void(std::size_t, VideoSample&&)>& sink) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.num_sequences);
  const std::size_t chunk = static_cast<std::size_t>(std::max(1, workers)) * 8;
  std::vector<VideoSample> buffer;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t count = std::min(chunk, n - begin);
    buffer.assign(count, VideoSample{});
    parallel_for(count, workers, [&](std::size_t i) { buffer[i] = generate_sequence(config, begin + i); });
    for (std::size_t i = 0; i < count; ++i) sink(begin + i, std::move(buffer[i]));
  }
}

std::vector<VideoSample> generate_dataset(const DatasetConfig& config, int workers) {
  std::vector<VideoSample> out;
  generate_dataset(config, workers, [&](std::size_t, VideoSample&& v) { out.push_back(std::move(v)); });
  return out;
}

}  // namespace objmot
