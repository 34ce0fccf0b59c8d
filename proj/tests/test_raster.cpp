#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "objmot/raster.hpp"

using namespace objmot;

namespace {

long area(const Mask& m) { return m.count(); }

ScheduledObject still_object(Shape shape, int scale, Vector2d at, Rgb color, int length = 1) {
  ScheduledObject o;
  o.sprite.shape = shape;
  o.sprite.scale_index = scale;
  o.sprite.color = color;
  o.trajectory.points.assign(static_cast<std::size_t>(length), at);
  o.size_schedule.assign(static_cast<std::size_t>(length), scale);
  return o;
}

}  // namespace

TEST(Rasterize, AxisAlignedSquareHasExactArea) {
  // Extent 10 at a half-integer centroid covers exactly 10x10 pixel centers.
  const Mask m = rasterize_sprite(Shape::square, 0, 0.0, {32.0, 32.0}, Canvas{});
  EXPECT_EQ(area(m), 100);
  EXPECT_TRUE(m(27, 27));
  EXPECT_TRUE(m(36, 36));
  EXPECT_FALSE(m(37, 36));
  EXPECT_FALSE(m(26, 30));
}

TEST(Rasterize, CentroidXIsColumn) {
  const Mask m = rasterize_sprite(Shape::square, 0, 0.0, {15.0, 45.0}, Canvas{});
  EXPECT_TRUE(m(45, 15));
  EXPECT_FALSE(m(15, 45));
}

TEST(Rasterize, SquareQuarterTurnIsIdentical) {
  const Vector2d at(30.3, 33.7);
  const Mask a = rasterize_sprite(Shape::square, 3, 0.2, at, Canvas{});
  const Mask b = rasterize_sprite(Shape::square, 3, 0.2 + std::numbers::pi / 2, at, Canvas{});
  EXPECT_TRUE((a == b).all());
}

TEST(Rasterize, EllipseHalfTurnIsIdentical) {
  const Vector2d at(30.3, 33.7);
  for (int k = 0; k < kNumOrientations; ++k) {
    const double o = k * 2.0 * std::numbers::pi / kNumOrientations;
    const Mask a = rasterize_sprite(Shape::ellipse, 4, o, at, Canvas{});
    const Mask b = rasterize_sprite(Shape::ellipse, 4, o + std::numbers::pi, at, Canvas{});
    ASSERT_TRUE((a == b).all()) << "orientation step " << k;
  }
}

TEST(Rasterize, EllipseAreaNearAnalytic) {
  // a = e/2, b = e/4 -> pi * e^2 / 8
  const double e = sprite_extent(5, Canvas{});
  const Mask m = rasterize_sprite(Shape::ellipse, 5, 0.0, {32.0, 32.0}, Canvas{});
  EXPECT_NEAR(static_cast<double>(area(m)), std::numbers::pi * e * e / 8.0, 0.05 * std::numbers::pi * e * e / 8.0);
}

TEST(Rasterize, AreaGrowsWithScale) {
  for (Shape s : {Shape::square, Shape::ellipse, Shape::heart, Shape::circle, Shape::triangle}) {
    long prev = 0;
    for (int k = 0; k < kNumScales; ++k) {
      const long a = area(rasterize_sprite(s, k, 0.0, {32.0, 32.0}, Canvas{}));
      EXPECT_GT(a, prev) << to_string(s) << " scale " << k;
      prev = a;
    }
  }
}

TEST(Rasterize, HeartFitsItsExtent) {
  const Mask m = rasterize_sprite(Shape::heart, 5, 0.0, {32.0, 32.0}, Canvas{});
  const double e = sprite_extent(5, Canvas{});
  int rmin = 64, rmax = -1, cmin = 64, cmax = -1;
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c)
      if (m(r, c)) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
  EXPECT_LE(rmax - rmin + 1, std::ceil(e) + 1);
  EXPECT_LE(cmax - cmin + 1, std::ceil(e) + 1);
  EXPECT_GE(rmax - rmin + 1, 0.8 * e);
}

TEST(Rasterize, OffCanvasIsEmpty) {
  EXPECT_EQ(area(rasterize_sprite(Shape::square, 5, 0.0, {-40.0, -40.0}, Canvas{})), 0);
  EXPECT_EQ(area(rasterize_sprite(Shape::heart, 5, 0.0, {200.0, 10.0}, Canvas{})), 0);
}

TEST(Rasterize, PartiallyClipped) {
  const Mask m = rasterize_sprite(Shape::square, 0, 0.0, {0.0, 32.0}, Canvas{});
  EXPECT_EQ(area(m), 50);
}

TEST(Quantize, RoundsToEightBitLevels) {
  const Rgb q = quantize_color(Rgb(0.5, 0.1, 1.0));
  EXPECT_DOUBLE_EQ(q[0], 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(q[1], 26.0 / 255.0);
  EXPECT_DOUBLE_EQ(q[2], 1.0);
  EXPECT_EQ(quantize_color(q), q);
}

TEST(Compose, FrontObjectWinsOverlap) {
  SceneSpec s;
  s.length = 1;
  s.background = Rgb(0.2, 0.2, 0.2);
  s.objects.push_back(still_object(Shape::square, 5, {32.0, 32.0}, Rgb(1, 0, 0)));
  s.objects.push_back(still_object(Shape::square, 0, {32.0, 32.0}, Rgb(0, 1, 0)));
  s.objects[0].depth_rank = 0;
  s.objects[1].depth_rank = 1;
  const ComposedFrame f = compose_frame(s, 0);
  EXPECT_EQ(f.labels(32, 32), 2);
  EXPECT_EQ(f.labels(22, 22), 1);
  EXPECT_EQ(f.labels(0, 0), 0);
  EXPECT_DOUBLE_EQ(f.frame.channels[1](32, 32), 1.0);
  EXPECT_DOUBLE_EQ(f.frame.channels[0](22, 22), 1.0);
  EXPECT_DOUBLE_EQ(f.frame.channels[0](0, 0), quantize_color(s.background)[0]);
  // Pixel color is the color of the labelled object everywhere.
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c) {
      const int id = f.labels(r, c);
      const Rgb want = id ? quantize_color(s.objects[static_cast<std::size_t>(id - 1)].sprite.color)
                          : quantize_color(s.background);
      for (int k = 0; k < 3; ++k) ASSERT_EQ(f.frame.channels[k](r, c), want[k]);
    }
  EXPECT_THROW(compose_frame(s, 1), InvalidParameter);
}

TEST(Compose, OccludedObjectIsInvisible) {
  SceneSpec s;
  s.length = 2;
  s.objects.push_back(still_object(Shape::square, 5, {32.0, 32.0}, Rgb(1, 0, 0), 2));
  s.objects.push_back(still_object(Shape::square, 0, {32.0, 32.0}, Rgb(0, 1, 0), 2));
  s.objects[1].trajectory.points[1] = {50.0, 50.0};
  s.objects[0].depth_rank = 1;  // big square in front hides the small one at t=0
  const VideoSample v = render_video(s);
  EXPECT_TRUE(v.visibility[0][0]);
  EXPECT_FALSE(v.visibility[1][0]);
  EXPECT_TRUE(v.visibility[1][1]);
}

TEST(Downsample, FrameBoxAverage) {
  Frame f(2, 2, Rgb::Zero());
  f.channels[0] << 0.0, 1.0, 1.0, 0.0;
  const Frame d = downsample(f, 2);
  ASSERT_EQ(d.height(), 1);
  EXPECT_DOUBLE_EQ(d.channels[0](0, 0), 0.5);
  EXPECT_THROW(downsample(Frame(3, 3), 2), InvalidParameter);
}

TEST(Downsample, LabelTieGoesToFrontObject) {
  LabelMap l(2, 2);
  l << 3, 3, 0, 0;
  EXPECT_EQ(downsample(l, 2, {-1, 0, 1, 2})(0, 0), 3);  // background loses
  l << 1, 2, 1, 2;
  EXPECT_EQ(downsample(l, 2, {-1, 5, 1})(0, 0), 1);
  EXPECT_EQ(downsample(l, 2, {-1, 1, 5})(0, 0), 2);
  l << 1, 1, 1, 0;
  EXPECT_EQ(downsample(l, 2, {-1, 0})(0, 0), 1);
  l << 0, 0, 0, 2;
  EXPECT_EQ(downsample(l, 2, {-1, 0, 0})(0, 0), 0);
}

TEST(Downsample, VideoKeepsLabelsAndQuantization) {
  Rng rng(3);
  const SceneSpec s = build_spmot_scene(rng, 4);
  const VideoSample full = render_video(s);
  const VideoSample half = downsample(full, 2);
  ASSERT_EQ(half.length(), 4);
  EXPECT_EQ(half.frames[0].height(), 64);
  EXPECT_EQ(half.gt[0].cols(), 64);
  for (const Frame& f : half.frames)
    for (int k = 0; k < 3; ++k)
      ASSERT_TRUE(((f.channels[k] * 255.0).round() / 255.0 == f.channels[k]).all());
  EXPECT_EQ(half.visibility.size(), s.objects.size());
}
