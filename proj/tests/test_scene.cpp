#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "objmot/color.hpp"
#include "objmot/raster.hpp"
#include "objmot/scene.hpp"

using namespace objmot;

TEST(Scene, StringRoundTrip) {
  for (Variant v : {Variant::standard, Variant::occlusion, Variant::small, Variant::large, Variant::same_color,
                    Variant::rotation, Variant::color_change, Variant::size_change})
    EXPECT_EQ(variant_from_string(to_string(v)), v);
  for (Shape s : {Shape::square, Shape::ellipse, Shape::heart, Shape::circle, Shape::triangle})
    EXPECT_EQ(shape_from_string(to_string(s)), s);
  EXPECT_THROW(variant_from_string("huge"), InvalidParameter);
  EXPECT_THROW(shape_from_string("star"), InvalidParameter);
}

TEST(Scene, SpriteExtentRange) {
  const Canvas c{64, 64};
  EXPECT_DOUBLE_EQ(sprite_extent(0, c), 10.0);
  EXPECT_DOUBLE_EQ(sprite_extent(5, c), 26.0);
  EXPECT_DOUBLE_EQ(sprite_extent(5, Canvas{128, 128}), 52.0);
  EXPECT_THROW(sprite_extent(6, c), InvalidParameter);
  EXPECT_THROW(sprite_extent(-1, c), InvalidParameter);
}

TEST(Scene, StandardSceneInvariants) {
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    const SceneSpec s = build_vmds_scene(rng, 10, Variant::standard);
    ASSERT_GE(s.objects.size(), 1u);
    ASSERT_LE(s.objects.size(), 4u);
    std::set<int> ranks;
    for (const auto& o : s.objects) {
      ASSERT_TRUE(o.sprite.shape == Shape::square || o.sprite.shape == Shape::ellipse ||
                  o.sprite.shape == Shape::heart);
      ASSERT_GE(o.sprite.scale_index, 0);
      ASSERT_LT(o.sprite.scale_index, kNumScales);
      const double steps = o.sprite.orientation / (2.0 * std::numbers::pi / kNumOrientations);
      ASSERT_NEAR(steps, std::round(steps), 1e-9);
      ASSERT_EQ(o.trajectory.length(), 10);
      ASSERT_TRUE(o.trajectory.inside(10.0, 54.0));
      ranks.insert(o.depth_rank);
    }
    ASSERT_EQ(ranks.size(), s.objects.size());
    ASSERT_EQ(*ranks.begin(), 0);
    ASSERT_EQ(*ranks.rbegin(), static_cast<int>(s.objects.size()) - 1);
  }
}

TEST(Scene, VariantConstraints) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    for (const auto& o : build_vmds_scene(rng, 10, Variant::small).objects) ASSERT_EQ(o.sprite.scale_index, 0);
    for (const auto& o : build_vmds_scene(rng, 10, Variant::large).objects)
      ASSERT_EQ(o.sprite.scale_index, kNumScales - 1);
    const SceneSpec same = build_vmds_scene(rng, 10, Variant::same_color);
    ASSERT_GE(same.objects.size(), 2u);
    for (const auto& o : same.objects) ASSERT_EQ(o.sprite.color, same.objects[0].sprite.color);
    const SceneSpec occ = build_vmds_scene(rng, 10, Variant::occlusion);
    ASSERT_TRUE(occ.crossing.has_value());
    std::vector<Trajectory> trajs;
    for (const auto& o : occ.objects) trajs.push_back(o.trajectory);
    ASSERT_TRUE(verify_crossing(trajs, *occ.crossing));
  }
}

TEST(Scene, BlackBackgroundOption) {
  Rng rng(3);
  VmdsOptions opt;
  opt.black_background = true;
  EXPECT_EQ(build_vmds_scene(rng, 5, Variant::standard, opt).background, Rgb::Zero());
}

TEST(Scene, Deterministic) {
  Rng a(9), b(9);
  EXPECT_EQ(build_vmds_scene(a, 10, Variant::occlusion), build_vmds_scene(b, 10, Variant::occlusion));
}

TEST(Scene, RotationScheduleSpeed) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const SceneSpec base = build_vmds_scene(rng, 10, Variant::standard);
    const SceneSpec s = apply_ood_schedule(base, OodKind::rotation, rng);
    for (const auto& o : s.objects) {
      const double deg = std::abs(o.rotation_rate) * 180.0 / std::numbers::pi;
      ASSERT_GE(deg, 5.0 - 1e-9);
      ASSERT_LE(deg, 40.0 + 1e-9);
      ASSERT_NEAR(o.orientation_at(3) - o.orientation_at(2), o.rotation_rate, 1e-12);
    }
    EXPECT_THROW(apply_ood_schedule(s, OodKind::rotation, rng), InvalidParameter);
  }
}

TEST(Scene, ColorScheduleKeepsSaturationAndValue) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const SceneSpec s = apply_ood_schedule(build_vmds_scene(rng, 10, Variant::standard), OodKind::color_change, rng);
    for (const auto& o : s.objects) {
      const double deg = std::abs(o.hue_rate) * 360.0;
      ASSERT_GE(deg, 1.0 - 1e-9);
      ASSERT_LE(deg, 10.0 + 1e-9);
      EXPECT_EQ(o.color_at(0), o.sprite.color);
      const Hsv h0 = rgb_to_hsv(o.color_at(0));
      const Hsv h5 = rgb_to_hsv(o.color_at(5));
      EXPECT_NEAR(h0.s, h5.s, 1e-9);
      EXPECT_NEAR(h0.v, h5.v, 1e-9);
    }
  }
}

TEST(Scene, SizeScheduleIsMonotoneBetweenExtremes) {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const SceneSpec s = apply_ood_schedule(build_vmds_scene(rng, 10, Variant::standard), OodKind::size_change, rng);
    for (const auto& o : s.objects) {
      const int first = o.scale_at(0);
      ASSERT_TRUE(first == 0 || first == kNumScales - 1);
      const int dir = first == 0 ? 1 : -1;
      bool changed = false;
      for (int t = 1; t < 10; ++t) {
        const int d = o.scale_at(t) - o.scale_at(t - 1);
        ASSERT_TRUE(d == 0 || d == dir);
        changed |= d != 0;
      }
      ASSERT_TRUE(changed);
    }
  }
}

TEST(Scene, SpmotScene) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const SceneSpec s = build_spmot_scene(rng, 10);
    EXPECT_EQ(s.canvas, (Canvas{128, 128}));
    EXPECT_EQ(s.background, Rgb::Zero());
    ASSERT_GE(s.objects.size(), 1u);
    ASSERT_LE(s.objects.size(), 4u);
    for (const auto& o : s.objects) {
      ASSERT_TRUE(o.sprite.shape == Shape::circle || o.sprite.shape == Shape::triangle ||
                  o.sprite.shape == Shape::square);
      bool in_palette = false;
      for (const Rgb& c : spmot_palette()) in_palette |= c == o.sprite.color;
      ASSERT_TRUE(in_palette);
      for (int t = 2; t < 10; ++t) {
        const Vector2d d2 = o.trajectory[t] - 2.0 * o.trajectory[t - 1] + o.trajectory[t - 2];
        ASSERT_EQ(d2, Vector2d::Zero());
      }
    }
  }
  EXPECT_EQ(spmot_palette().size(), 6u);
}

TEST(Scene, DepthByAreaLargerInFront) {
  SceneSpec s;
  s.length = 1;
  for (int scale : {0, 5, 2}) {
    ScheduledObject o;
    o.sprite.shape = Shape::square;
    o.sprite.scale_index = scale;
    o.trajectory.points = {{32.0, 32.0}};
    o.size_schedule = {scale};
    s.objects.push_back(o);
  }
  assign_depth_by_area(s);
  EXPECT_EQ(s.objects[0].depth_rank, 0);
  EXPECT_EQ(s.objects[1].depth_rank, 2);
  EXPECT_EQ(s.objects[2].depth_rank, 1);
}

TEST(Scene, DepthTieLowerIndexInFront) {
  SceneSpec s;
  s.length = 1;
  for (int i = 0; i < 2; ++i) {
    ScheduledObject o;
    o.sprite.scale_index = 3;
    o.trajectory.points = {{20.0 + 20 * i, 32.0}};
    o.size_schedule = {3};
    s.objects.push_back(o);
  }
  assign_depth_by_area(s);
  EXPECT_GT(s.objects[0].depth_rank, s.objects[1].depth_rank);
}

TEST(Color, HsvRoundTrip) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Rgb c(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0));
    EXPECT_LT((hsv_to_rgb(rgb_to_hsv(c)) - c).cwiseAbs().maxCoeff(), 1e-12);
  }
  const Hsv red = rgb_to_hsv(Rgb(1, 0, 0));
  EXPECT_DOUBLE_EQ(red.h, 0.0);
  EXPECT_DOUBLE_EQ(red.s, 1.0);
  EXPECT_DOUBLE_EQ(red.v, 1.0);
}
