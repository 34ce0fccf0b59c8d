#include "objmot/raster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace objmot {

namespace {

double reduce_angle(double angle, double period) {
  double r = std::fmod(angle, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

bool inside_shape(Shape shape, double u, double v, double extent) {
  const double half = extent / 2.0;
  switch (shape) {
    case Shape::square:
      return u >= -half && u < half && v >= -half && v < half;
    case Shape::ellipse: {
      const double a = half;
      const double b = extent / 4.0;
      return (u * u) / (a * a) + (v * v) / (b * b) <= 1.0;
    }
    case Shape::circle:
      return u * u + v * v <= half * half;
    case Shape::heart: {
      // (x^2 + y^2 - 1)^3 - x^2 y^3 <= 0 spans roughly [-1.14, 1.14] x
      // [-1, 1.24]; scale so the bounding box matches the extent.
      const double scale = 2.3 / extent;
      const double x = u * scale;
      const double y = -v * scale + 0.12;
      const double r = x * x + y * y - 1.0;
      return r * r * r - x * x * y * y * y <= 0.0;
    }
    case Shape::triangle: {
      // Apex up at (0, -half), base corners (+-half, half). Image y points down.
      if (v >= half) return false;
      const double t = (v + half) / extent;  // 0 at apex, 1 at base
      return std::abs(u) <= t * half;
    }
  }
  return false;
}

}  // namespace

Mask rasterize_extent(Shape shape, double extent, double orientation, const Vector2d& centroid,
                      const Canvas& canvas) {
  Mask mask = Mask::Constant(canvas.height, canvas.width, false);
  if (shape == Shape::square)
    orientation = reduce_angle(orientation, std::numbers::pi / 2.0);
  else if (shape == Shape::ellipse)
    orientation = reduce_angle(orientation, std::numbers::pi);
  else if (shape == Shape::circle)
    orientation = 0.0;

  const double c = std::cos(orientation);
  const double s = std::sin(orientation);
  const double reach = extent;  // generous bound for every shape
  const int c0 = std::max(0, static_cast<int>(std::floor(centroid.x() - reach)));
  const int c1 = std::min(canvas.width - 1, static_cast<int>(std::ceil(centroid.x() + reach)));
  const int r0 = std::max(0, static_cast<int>(std::floor(centroid.y() - reach)));
  const int r1 = std::min(canvas.height - 1, static_cast<int>(std::ceil(centroid.y() + reach)));
  for (int r = r0; r <= r1; ++r) {
    const double dy = r + 0.5 - centroid.y();
    for (int col = c0; col <= c1; ++col) {
      const double dx = col + 0.5 - centroid.x();
      const double u = c * dx + s * dy;
      const double v = -s * dx + c * dy;
      if (inside_shape(shape, u, v, extent)) mask(r, col) = true;
    }
  }
  return mask;
}

Mask rasterize_sprite(Shape shape, int scale_index, double orientation, const Vector2d& centroid,
                      const Canvas& canvas) {
  return rasterize_extent(shape, sprite_extent(scale_index, canvas), orientation, centroid, canvas);
}

Rgb quantize_color(const Rgb& c) {
  return c.array().max(0.0).min(1.0).unaryExpr([](double v) { return std::round(v * 255.0) / 255.0; });
}

void quantize_frame(Frame& frame) {
  for (auto& ch : frame.channels)
    ch = ch.max(0.0).min(1.0).unaryExpr([](double v) { return std::round(v * 255.0) / 255.0; });
}

ComposedFrame compose_frame(const SceneSpec& scene, int t) {
  if (t < 0 || t >= scene.length) throw InvalidParameter("compose_frame: frame index out of range");
  const Canvas& cv = scene.canvas;
  ComposedFrame out{Frame(cv.height, cv.width, quantize_color(scene.background)),
                    LabelMap::Zero(cv.height, cv.width)};

  std::vector<std::size_t> order(scene.objects.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scene.objects[a].depth_rank < scene.objects[b].depth_rank;
  });

  for (std::size_t idx : order) {
    const auto& obj = scene.objects[idx];
    const Mask mask = rasterize_sprite(obj.sprite.shape, obj.scale_at(t), obj.orientation_at(t), obj.centroid_at(t), cv);
    const Rgb color = quantize_color(obj.color_at(t));
    for (int c = 0; c < 3; ++c) out.frame.channels[c] = mask.select(color[c], out.frame.channels[c]);
    out.labels = mask.select(SceneSpec::object_id(idx), out.labels);
  }
  return out;
}

std::vector<std::vector<bool>> visibility_table(const std::vector<LabelMap>& gt, std::size_t num_objects) {
  std::vector<std::vector<bool>> vis(num_objects, std::vector<bool>(gt.size(), false));
  for (std::size_t t = 0; t < gt.size(); ++t) {
    const LabelMap& lm = gt[t];
    for (Eigen::Index i = 0; i < lm.size(); ++i) {
      const auto id = lm.data()[i];
      if (id >= 1 && static_cast<std::size_t>(id) <= num_objects) vis[static_cast<std::size_t>(id - 1)][t] = true;
    }
  }
  return vis;
}

VideoSample render_video(const SceneSpec& scene) {
  VideoSample video;
  video.scene = scene;
  video.frames.reserve(static_cast<std::size_t>(scene.length));
  video.gt.reserve(static_cast<std::size_t>(scene.length));
  for (int t = 0; t < scene.length; ++t) {
    ComposedFrame cf = compose_frame(scene, t);
    video.frames.push_back(std::move(cf.frame));
    video.gt.push_back(std::move(cf.labels));
  }
  video.visibility = visibility_table(video.gt, scene.objects.size());
  return video;
}

Frame downsample(const Frame& frame, int factor) {
  if (factor < 1 || frame.height() % factor != 0 || frame.width() % factor != 0)
    throw InvalidParameter("downsample: dimensions not divisible by factor");
  if (factor == 1) return frame;
  const int h = frame.height() / factor;
  const int w = frame.width() / factor;
  Frame out(h, w);
  const double inv = 1.0 / (factor * factor);
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < h; ++r)
      for (int col = 0; col < w; ++col)
        out.channels[c](r, col) = frame.channels[c].block(r * factor, col * factor, factor, factor).sum() * inv;
  return out;
}

LabelMap downsample(const LabelMap& labels, int factor, const std::vector<int>& depth_of_label) {
  if (factor < 1 || labels.rows() % factor != 0 || labels.cols() % factor != 0)
    throw InvalidParameter("downsample: dimensions not divisible by factor");
  if (factor == 1) return labels;
  const auto h = labels.rows() / factor;
  const auto w = labels.cols() / factor;
  LabelMap out(h, w);
  auto depth = [&](std::int32_t label) {
    return label >= 0 && static_cast<std::size_t>(label) < depth_of_label.size()
               ? depth_of_label[static_cast<std::size_t>(label)]
               : -1;
  };
  std::map<std::int32_t, int> counts;
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      counts.clear();
      for (int dr = 0; dr < factor; ++dr)
        for (int dc = 0; dc < factor; ++dc) ++counts[labels(r * factor + dr, c * factor + dc)];
      std::int32_t best = 0;
      int best_count = -1;
      for (const auto& [label, count] : counts) {
        if (count > best_count) {
          best = label;
          best_count = count;
        } else if (count == best_count) {
          // Background never wins a tie; between objects the front-most does.
          if (best == 0 || (label != 0 && depth(label) > depth(best))) best = label;
        }
      }
      out(r, c) = best;
    }
  }
  return out;
}

VideoSample downsample(const VideoSample& video, int factor) {
  if (factor == 1) return video;
  std::vector<int> depth_of_label(video.scene.objects.size() + 1, -1);
  for (std::size_t i = 0; i < video.scene.objects.size(); ++i)
    depth_of_label[static_cast<std::size_t>(SceneSpec::object_id(i))] = video.scene.objects[i].depth_rank;

  VideoSample out;
  out.scene = video.scene;
  out.seed = video.seed;
  for (const auto& f : video.frames) {
    Frame d = downsample(f, factor);
    quantize_frame(d);
    out.frames.push_back(std::move(d));
  }
  for (const auto& g : video.gt) out.gt.push_back(downsample(g, factor, depth_of_label));
  out.visibility = visibility_table(out.gt, video.scene.objects.size());
  return out;
}

}  // namespace objmot
