#include "objmot/scene.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <numeric>
#include <string>

#include "objmot/color.hpp"
#include "objmot/raster.hpp"

namespace objmot {

namespace {

constexpr std::array<std::pair<Shape, std::string_view>, 5> kShapeNames{{
    {Shape::square, "square"},
    {Shape::ellipse, "ellipse"},
    {Shape::heart, "heart"},
    {Shape::circle, "circle"},
    {Shape::triangle, "triangle"},
}};

constexpr std::array<std::pair<Variant, std::string_view>, 8> kVariantNames{{
    {Variant::standard, "standard"},
    {Variant::occlusion, "occlusion"},
    {Variant::small, "small"},
    {Variant::large, "large"},
    {Variant::same_color, "same_color"},
    {Variant::rotation, "rotation"},
    {Variant::color_change, "color_change"},
    {Variant::size_change, "size_change"},
}};

constexpr std::array<Shape, 3> kVmdsShapes{Shape::square, Shape::ellipse, Shape::heart};
constexpr std::array<Shape, 3> kSpmotShapes{Shape::circle, Shape::triangle, Shape::square};

constexpr double kDeg = std::numbers::pi / 180.0;

Rgb random_color(Rng& rng) {
  const double r = uniform(rng, 0.0, 1.0);
  const double g = uniform(rng, 0.0, 1.0);
  const double b = uniform(rng, 0.0, 1.0);
  return {r, g, b};
}

double random_sign(Rng& rng) { return uniform_int(rng, 0, 1) == 0 ? -1.0 : 1.0; }

}  // namespace

std::string_view to_string(Shape s) {
  for (const auto& [k, name] : kShapeNames)
    if (k == s) return name;
  return "unknown";
}

std::string_view to_string(Variant v) {
  for (const auto& [k, name] : kVariantNames)
    if (k == v) return name;
  return "unknown";
}

Shape shape_from_string(std::string_view s) {
  for (const auto& [k, name] : kShapeNames)
    if (name == s) return k;
  throw InvalidParameter("unknown shape '" + std::string(s) + "'");
}

Variant variant_from_string(std::string_view s) {
  for (const auto& [k, name] : kVariantNames)
    if (name == s) return k;
  throw InvalidParameter("unknown variant '" + std::string(s) + "'");
}

double sprite_extent(int scale_index, const Canvas& canvas) {
  if (scale_index < 0 || scale_index >= kNumScales)
    throw InvalidParameter("scale_index out of range: " + std::to_string(scale_index));
  const double base = 10.0 + 16.0 * scale_index / (kNumScales - 1);
  return base * canvas.width / 64.0;
}

Rgb ScheduledObject::color_at(int t) const {
  if (hue_rate == 0.0 || t == 0) return sprite.color;
  Hsv hsv = rgb_to_hsv(sprite.color);
  hsv.h += t * hue_rate;
  return hsv_to_rgb(hsv);
}

void assign_depth_by_area(SceneSpec& scene) {
  const auto n = scene.objects.size();
  std::vector<long> area(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& obj = scene.objects[i];
    area[i] = rasterize_sprite(obj.sprite.shape, obj.scale_at(0), obj.orientation_at(0), obj.centroid_at(0),
                               scene.canvas)
                  .count();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Back to front: ascending area, higher index first among equals.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (area[a] != area[b]) return area[a] < area[b];
    return a > b;
  });
  for (std::size_t rank = 0; rank < n; ++rank) scene.objects[order[rank]].depth_rank = static_cast<int>(rank);
}

SceneSpec build_vmds_scene(Rng& rng, int length, Variant variant, const VmdsOptions& options) {
  if (length < 1) throw InvalidParameter("build_vmds_scene: length must be >= 1");
  if (variant == Variant::rotation || variant == Variant::color_change || variant == Variant::size_change)
    variant = Variant::standard;  // OOD schedules are layered on by apply_ood_schedule

  const bool needs_pair = variant == Variant::occlusion || variant == Variant::same_color;
  SceneSpec scene;
  scene.canvas = options.canvas;
  scene.length = length;

  const int n = uniform_int(rng, needs_pair ? 2 : 1, kMaxObjects);
  const Rgb background = random_color(rng);
  scene.background = options.black_background ? Rgb::Zero() : background;
  const Rgb shared = random_color(rng);

  scene.objects.resize(static_cast<std::size_t>(n));
  for (auto& obj : scene.objects) {
    SpriteSpec& s = obj.sprite;
    s.shape = kVmdsShapes[static_cast<std::size_t>(uniform_int(rng, 0, 2))];
    s.scale_index = uniform_int(rng, 0, kNumScales - 1);
    s.orientation = uniform_int(rng, 0, kNumOrientations - 1) * (2.0 * std::numbers::pi / kNumOrientations);
    s.color = random_color(rng);
    if (variant == Variant::small) s.scale_index = 0;
    if (variant == Variant::large) s.scale_index = kNumScales - 1;
    if (variant == Variant::same_color) s.color = shared;
    obj.size_schedule.assign(static_cast<std::size_t>(length), s.scale_index);
  }

  const double px = options.canvas.width / 64.0;
  GpParams gp;
  gp.length = length;
  gp.bounds_lo = 10.0 * px;
  gp.bounds_hi = 54.0 * px;

  if (variant == Variant::occlusion) {
    CrossingSample cs = sample_crossing_trajectories(rng, gp, n);
    for (int k = 0; k < n; ++k)
      scene.objects[static_cast<std::size_t>(k)].trajectory = std::move(cs.trajectories[static_cast<std::size_t>(k)]);
    scene.crossing = cs.crossing;
  } else {
    for (auto& obj : scene.objects) obj.trajectory = sample_trajectory(rng, gp);
  }

  assign_depth_by_area(scene);
  return scene;
}

SceneSpec apply_ood_schedule(const SceneSpec& scene, OodKind kind, Rng& rng) {
  for (const auto& obj : scene.objects) {
    const bool static_sizes = std::all_of(obj.size_schedule.begin(), obj.size_schedule.end(),
                                          [&](int s) { return s == obj.sprite.scale_index; });
    if (obj.rotation_rate != 0.0 || obj.hue_rate != 0.0 || !static_sizes)
      throw InvalidParameter("apply_ood_schedule: scene already carries a schedule");
  }

  SceneSpec out = scene;
  for (auto& obj : out.objects) {
    switch (kind) {
      case OodKind::rotation:
        obj.rotation_rate = random_sign(rng) * uniform(rng, 5.0, 40.0) * kDeg;
        break;
      case OodKind::color_change: {
        Hsv hsv = rgb_to_hsv(obj.sprite.color);
        hsv.h = uniform(rng, 0.0, 1.0);
        obj.sprite.color = hsv_to_rgb(hsv);
        obj.hue_rate = random_sign(rng) * uniform(rng, 1.0, 10.0) / 360.0;
        break;
      }
      case OodKind::size_change: {
        const int first = uniform_int(rng, 0, 1) == 0 ? 0 : kNumScales - 1;
        const int step = first == 0 ? 1 : -1;
        // Frame 0 always holds the extreme size; `start` is the first frame
        // that differs from it.
        const int start = out.length > 1 ? uniform_int(rng, 1, out.length - 1) : out.length;
        obj.sprite.scale_index = first;
        for (int t = 0; t < out.length; ++t) {
          const int steps = t < start ? 0 : t - start + 1;
          obj.size_schedule[static_cast<std::size_t>(t)] = std::clamp(first + step * steps, 0, kNumScales - 1);
        }
        break;
      }
      default:
        throw InvalidParameter("apply_ood_schedule: unknown kind");
    }
  }
  if (kind == OodKind::size_change) assign_depth_by_area(out);
  return out;
}

const std::vector<Rgb>& spmot_palette() {
  static const std::vector<Rgb> palette{
      {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}, {1.0, 0.0, 1.0}, {0.0, 1.0, 1.0},
  };
  return palette;
}

SceneSpec build_spmot_scene(Rng& rng, int length, const Canvas& canvas) {
  if (length < 1) throw InvalidParameter("build_spmot_scene: length must be >= 1");
  SceneSpec scene;
  scene.canvas = canvas;
  scene.length = length;
  scene.background = Rgb::Zero();

  const int n = uniform_int(rng, 1, kMaxObjects);
  const auto& palette = spmot_palette();
  LinearParams lin;
  lin.length = length;
  lin.bounds_lo = 0.0;
  lin.bounds_hi = canvas.width;
  lin.speed_lo = -3.0 * canvas.width / 128.0;
  lin.speed_hi = 3.0 * canvas.width / 128.0;

  scene.objects.resize(static_cast<std::size_t>(n));
  for (auto& obj : scene.objects) {
    obj.sprite.shape = kSpmotShapes[static_cast<std::size_t>(uniform_int(rng, 0, 2))];
    obj.sprite.scale_index = uniform_int(rng, 0, 2);
    obj.sprite.orientation = 0.0;
    obj.sprite.color = palette[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(palette.size()) - 1))];
    obj.size_schedule.assign(static_cast<std::size_t>(length), obj.sprite.scale_index);
    obj.trajectory = sample_linear_trajectory(rng, lin);
  }
  assign_depth_by_area(scene);
  return scene;
}

}  // namespace objmot
