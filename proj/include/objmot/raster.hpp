#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "objmot/core.hpp"
#include "objmot/scene.hpp"

namespace objmot {

/// Binary sprite mask sampled at pixel centers (c + 0.5, r + 0.5).
/// Off-canvas sprites produce an all-false mask.
Mask rasterize_sprite(Shape shape, int scale_index, double orientation, const Vector2d& centroid,
                      const Canvas& canvas);

/// Same, with the bounding extent given directly in pixels.
Mask rasterize_extent(Shape shape, double extent, double orientation, const Vector2d& centroid,
                      const Canvas& canvas);

/// Round each channel to the nearest multiple of 1/255 so frames survive an
/// 8-bit round trip unchanged.
Rgb quantize_color(const Rgb& c);
void quantize_frame(Frame& frame);

struct ComposedFrame {
  Frame frame;
  LabelMap labels;
};

ComposedFrame compose_frame(const SceneSpec& scene, int t);

struct VideoSample {
  std::vector<Frame> frames;
  std::vector<LabelMap> gt;
  /// visibility[k][t]: object k (id k + 1) has a nonempty mask in frame t.
  std::vector<std::vector<bool>> visibility;
  SceneSpec scene;
  std::uint64_t seed = 0;

  int length() const { return static_cast<int>(frames.size()); }
};

VideoSample render_video(const SceneSpec& scene);

std::vector<std::vector<bool>> visibility_table(const std::vector<LabelMap>& gt, std::size_t num_objects);

Frame downsample(const Frame& frame, int factor);

/// Majority vote per block. Ties go to the front-most object by
/// `depth_of_label` (indexed by label, background entry ignored); the
/// background loses every tie against an object.
LabelMap downsample(const LabelMap& labels, int factor, const std::vector<int>& depth_of_label);

/// Downsample every frame and label map of a rendered video, then re-derive
/// visibility. Scene geometry stays in full-resolution coordinates.
VideoSample downsample(const VideoSample& video, int factor);

}  // namespace objmot
