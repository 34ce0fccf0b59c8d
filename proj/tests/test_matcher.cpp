#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "objmot/matcher.hpp"
#include "oracles.hpp"

using namespace objmot;

namespace {

Mask rect(int h, int w, int r0, int c0, int rh, int cw) {
  Mask m = Mask::Constant(h, w, false);
  m.block(r0, c0, rh, cw).setConstant(true);
  return m;
}

LabelMap paint(int h, int w, std::initializer_list<std::tuple<int, int, int, int, int>> boxes) {
  LabelMap l = LabelMap::Zero(h, w);
  for (const auto& [id, r, c, rh, cw] : boxes) l.block(r, c, rh, cw).setConstant(id);
  return l;
}

}  // namespace

TEST(Iou, KnownValue) {
  // 2x2 squares overlapping in a 1x2 strip: 2 / 6.
  const Mask a = rect(4, 4, 0, 0, 2, 2);
  const Mask b = rect(4, 4, 1, 0, 2, 2);
  EXPECT_DOUBLE_EQ(iou(a, b), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, rect(4, 4, 2, 2, 2, 2)), 0.0);
}

TEST(Iou, EmptyAndMismatched) {
  const Mask e = Mask::Constant(3, 3, false);
  EXPECT_EQ(iou(e, e), 0.0);
  EXPECT_THROW(iou(e, Mask::Constant(3, 4, false)), InvalidParameter);
}

TEST(Hungarian, CrossAssignmentBeatsGreedy) {
  Eigen::MatrixXd s(2, 2);
  s << 0.6, 0.55, 0.55, 0.0;
  const Assignment a = hungarian(s, 0.5);
  EXPECT_EQ(a.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
  EXPECT_DOUBLE_EQ(a.total, 1.1);
}

TEST(Hungarian, BelowThresholdNeverAssigned) {
  Eigen::MatrixXd s(2, 3);
  s << 0.49, 0.2, 0.0, 0.1, 0.3, 0.45;
  EXPECT_TRUE(hungarian(s, 0.5).pairs.empty());
  s(1, 2) = 0.5;
  EXPECT_EQ(hungarian(s, 0.5).pairs, (std::vector<std::pair<int, int>>{{1, 2}}));
}

TEST(Hungarian, EmptyAndRectangular) {
  EXPECT_TRUE(hungarian(Eigen::MatrixXd(0, 3), 0.5).pairs.empty());
  EXPECT_TRUE(hungarian(Eigen::MatrixXd(2, 0), 0.5).pairs.empty());
  Eigen::MatrixXd s(1, 3);
  s << 0.6, 0.9, 0.7;
  EXPECT_EQ(hungarian(s, 0.5).pairs, (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(Hungarian, TieBreakIsLexicographic) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Constant(3, 3, 0.8);
  EXPECT_EQ(hungarian(s, 0.5).pairs, (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Hungarian, RejectsNonFinite) {
  Eigen::MatrixXd s(1, 1);
  s << std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(hungarian(s, 0.5), InvalidParameter);
}

TEST(Hungarian, AgreesWithEnumeration) {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = dim(rng), c = dim(rng);
    Eigen::MatrixXd s(r, c);
    std::vector<std::vector<double>> v(r, std::vector<double>(c));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) v[i][j] = s(i, j) = std::round(u(rng) * 8) / 8;  // plenty of ties
    const auto want = oracle::enumerate_assignment(v, 0.5);
    const auto got = hungarian(s, 0.5);
    ASSERT_EQ(got.pairs, want.pairs) << "trial " << trial;
  }
}

TEST(Labels, InstancesRoundTrip) {
  const LabelMap l = paint(6, 6, {{3, 0, 0, 2, 2}, {7, 3, 3, 2, 3}});
  const auto inst = instances_from_labels(l);
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst[0].id, 3);
  EXPECT_EQ(inst[1].id, 7);
  EXPECT_TRUE(same_labels(labels_from_instances(inst, 6, 6), l));
}

TEST(Labels, OverlapAndDuplicatesRejected) {
  std::vector<Instance> inst{{1, rect(4, 4, 0, 0, 2, 2)}, {2, rect(4, 4, 1, 1, 2, 2)}};
  EXPECT_THROW(labels_from_instances(inst, 4, 4), ValidationError);
  inst[1] = {1, rect(4, 4, 2, 2, 2, 2)};
  EXPECT_THROW(labels_from_instances(inst, 4, 4), ValidationError);
}

TEST(MatchFrame, PerfectMatch) {
  CorrespondenceState st;
  const LabelMap gt = paint(8, 8, {{1, 0, 0, 3, 3}, {2, 4, 4, 3, 3}});
  const LabelMap pred = paint(8, 8, {{5, 0, 0, 3, 3}, {9, 4, 4, 3, 3}});
  const FrameMatchResult r = match_frame(st, gt, pred, MatchConfig{});
  ASSERT_EQ(r.pairs.size(), 2u);
  EXPECT_EQ(r.pairs[0], (MatchedPair{1, 5, 1.0}));
  EXPECT_EQ(r.pairs[1], (MatchedPair{2, 9, 1.0}));
  EXPECT_TRUE(r.misses.empty());
  EXPECT_TRUE(r.false_positives.empty());
  EXPECT_TRUE(r.id_switches.empty());
  EXPECT_EQ(st.last_hypothesis.at(1), 5);
}

TEST(MatchFrame, ThresholdIsInclusive) {
  CorrespondenceState st;
  const LabelMap gt = paint(4, 4, {{1, 0, 0, 2, 2}});
  const LabelMap pred = paint(4, 4, {{1, 0, 0, 2, 1}});  // IoU exactly 0.5
  EXPECT_EQ(match_frame(st, gt, pred, MatchConfig{}).pairs.size(), 1u);
  CorrespondenceState st2;
  EXPECT_TRUE(match_frame(st2, gt, pred, MatchConfig{0.51, 0.2}).pairs.empty());
}

TEST(MatchFrame, MissAndFalsePositive) {
  CorrespondenceState st;
  const LabelMap gt = paint(8, 8, {{1, 0, 0, 3, 3}});
  const LabelMap pred = paint(8, 8, {{4, 5, 5, 3, 3}});
  const FrameMatchResult r = match_frame(st, gt, pred, MatchConfig{});
  EXPECT_EQ(r.misses, std::vector<int>{1});
  EXPECT_EQ(r.false_positives, std::vector<int>{4});
  EXPECT_EQ(r.visible_objects(), 1);
}

TEST(MatchFrame, SwitchSurvivesOcclusionGap) {
  CorrespondenceState st;
  const LabelMap gt = paint(8, 8, {{1, 0, 0, 3, 3}});
  const LabelMap empty = LabelMap::Zero(8, 8);
  match_frame(st, gt, paint(8, 8, {{4, 0, 0, 3, 3}}), MatchConfig{});
  const auto gap = match_frame(st, empty, empty, MatchConfig{});
  EXPECT_EQ(gap.visible_objects(), 0);
  const auto back = match_frame(st, gt, paint(8, 8, {{6, 0, 0, 3, 3}}), MatchConfig{});
  EXPECT_EQ(back.id_switches, std::vector<int>{1});
  const auto again = match_frame(st, gt, paint(8, 8, {{6, 0, 0, 3, 3}}), MatchConfig{});
  EXPECT_TRUE(again.id_switches.empty());
}

TEST(MatchFrame, CarryOverWinsTie) {
  // gt 1 was tracked by hypothesis 3. Hypotheses 2 and 3 both reach IoU 0.5;
  // without carry-over the tie would go to the lower column (2).
  CorrespondenceState st;
  st.last_hypothesis[1] = 3;
  const LabelMap gt = paint(4, 8, {{1, 0, 0, 4, 4}});
  const LabelMap pred = paint(4, 8, {{2, 0, 0, 2, 4}, {3, 2, 0, 2, 4}});
  const auto r = match_frame(st, gt, pred, MatchConfig{});
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].hyp, 3);
  EXPECT_TRUE(r.id_switches.empty());
  EXPECT_EQ(r.false_positives, std::vector<int>{2});

  CorrespondenceState fresh;
  EXPECT_EQ(match_frame(fresh, gt, pred, MatchConfig{}).pairs[0].hyp, 2);
}

TEST(MatchFrame, TieBreakIgnoresHypothesisIds) {
  // Two halves of gt 1 tie at IoU 0.5; the upper half wins whatever its id.
  const LabelMap gt = paint(4, 8, {{1, 0, 0, 4, 4}});
  for (const auto& [top, bottom] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{9, 1}}) {
    CorrespondenceState st;
    const LabelMap pred = paint(4, 8, {{top, 0, 0, 2, 4}, {bottom, 2, 0, 2, 4}});
    EXPECT_EQ(match_frame(st, gt, pred, MatchConfig{}).pairs[0].hyp, top);
  }
}

TEST(MatchFrame, DimensionMismatch) {
  CorrespondenceState st;
  EXPECT_THROW(match_frame(st, LabelMap::Zero(4, 4), LabelMap::Zero(4, 5), MatchConfig{}), InvalidParameter);
}

TEST(MatchConfig, Validation) {
  EXPECT_THROW((MatchConfig{0.0, 0.2}).validate(), InvalidParameter);
  EXPECT_THROW((MatchConfig{1.01, 0.2}).validate(), InvalidParameter);
  EXPECT_THROW((MatchConfig{0.5, 0.0}).validate(), InvalidParameter);
  EXPECT_NO_THROW((MatchConfig{1.0, 1.0}).validate());
}

TEST(ExcludeBackground, StrictThreshold) {
  const LabelMap pred = paint(4, 4, {{1, 0, 0, 4, 4}, {2, 0, 0, 1, 1}});
  // Background mask covering the whole canvas: id 1 has IoU 15/16, id 2 1/16.
  const Mask bg = Mask::Constant(4, 4, true);
  const LabelMap out = exclude_background(pred, {bg}, 0.2);
  EXPECT_EQ((out == 1).count(), 0);
  EXPECT_EQ(out(0, 0), 2);
  // 0.0625 is not strictly above 0.0625.
  EXPECT_EQ(exclude_background(pred, {bg}, 0.0625)(0, 0), 2);
}
