#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "objmot/core.hpp"
#include "objmot/rng.hpp"
#include "objmot/trajectory.hpp"

namespace objmot {

/// Sprite shapes. The first three form the VMDS set, the last three
/// (circle, triangle, square) the SpMOT set.
enum class Shape { square, ellipse, heart, circle, triangle };

enum class Variant { standard, occlusion, small, large, same_color, rotation, color_change, size_change };

enum class OodKind { rotation, color_change, size_change };

inline constexpr int kNumScales = 6;
inline constexpr int kNumOrientations = 40;
inline constexpr int kMaxObjects = 4;

std::string_view to_string(Shape s);
std::string_view to_string(Variant v);
Shape shape_from_string(std::string_view s);
Variant variant_from_string(std::string_view s);

/// Sprite bounding extent in pixels: 10..26 px on a 64 px canvas, linear in
/// the scale index, scaled proportionally with canvas width.
double sprite_extent(int scale_index, const Canvas& canvas);

struct SpriteSpec {
  Shape shape = Shape::square;
  int scale_index = 0;
  double orientation = 0.0;
  Rgb color = Rgb::Zero();

  friend bool operator==(const SpriteSpec&, const SpriteSpec&) = default;
};

struct ScheduledObject {
  SpriteSpec sprite;
  Trajectory trajectory;
  double rotation_rate = 0.0;  // radians per frame
  double hue_rate = 0.0;       // hue turns per frame
  std::vector<int> size_schedule;
  int depth_rank = 0;  // higher is in front

  double orientation_at(int t) const { return sprite.orientation + t * rotation_rate; }
  int scale_at(int t) const { return size_schedule[static_cast<std::size_t>(t)]; }
  const Vector2d& centroid_at(int t) const { return trajectory[t]; }
  Rgb color_at(int t) const;

  friend bool operator==(const ScheduledObject&, const ScheduledObject&) = default;
};

struct SceneSpec {
  std::vector<ScheduledObject> objects;
  Rgb background = Rgb::Zero();
  Canvas canvas;
  int length = 0;
  std::optional<Crossing> crossing;

  /// Object id used in label maps for objects[i].
  static int object_id(std::size_t index) { return static_cast<int>(index) + 1; }

  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

struct VmdsOptions {
  Canvas canvas{64, 64};
  bool black_background = false;
};

SceneSpec build_vmds_scene(Rng& rng, int length, Variant variant, const VmdsOptions& options = {});

SceneSpec apply_ood_schedule(const SceneSpec& scene, OodKind kind, Rng& rng);

/// The six fully saturated SpMOT colors.
const std::vector<Rgb>& spmot_palette();

SceneSpec build_spmot_scene(Rng& rng, int length, const Canvas& canvas = {128, 128});

/// Assign depth ranks 0..n-1 by frame-0 rendered area: larger in front, ties
/// put the lower object index in front.
void assign_depth_by_area(SceneSpec& scene);

}  // namespace objmot
