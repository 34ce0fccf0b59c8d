#pragma once

#include <map>
#include <utility>
#include <vector>

#include "objmot/core.hpp"

namespace objmot {

struct MatchConfig {
  double iou_threshold = 0.5;
  double background_iou_threshold = 0.2;

  void validate() const;
};

struct MatchedPair {
  int gt = 0;
  int hyp = 0;
  double iou = 0.0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// Outcome for one frame. All id lists are sorted ascending.
struct FrameMatchResult {
  std::vector<MatchedPair> pairs;  // sorted by gt id
  std::vector<int> misses;
  std::vector<int> false_positives;
  std::vector<int> id_switches;

  int visible_objects() const { return static_cast<int>(pairs.size() + misses.size()); }

  friend bool operator==(const FrameMatchResult&, const FrameMatchResult&) = default;
};

/// gt id -> most recently matched hypothesis id. Survives occlusion gaps.
struct CorrespondenceState {
  std::map<int, int> last_hypothesis;
};

struct Instance {
  int id = 0;
  Mask mask;
};

double iou(const Mask& a, const Mask& b);

/// Zero every predicted label whose mask has IoU strictly above `threshold`
/// with any of the background masks.
LabelMap exclude_background(const LabelMap& pred, const std::vector<Mask>& background, double threshold);

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  double total = 0.0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Maximum-score one-to-one partial assignment using only entries
/// >= threshold. Among optimal assignments (scores within 1e-12) the one
/// whose per-row column sequence is lexicographically smallest wins, an
/// unassigned row ranking after every column.
Assignment hungarian(const Eigen::MatrixXd& scores, double threshold);

/// Instance masks present in a label map (label 0 excluded), ascending id.
std::vector<Instance> instances_from_labels(const LabelMap& labels);

/// Paint instances into a label map; ValidationError if two overlap.
LabelMap labels_from_instances(const std::vector<Instance>& instances, int height, int width);

/// One frame of correspondence: carry-over of remembered pairs that still
/// clear the threshold, optimal assignment of the rest, then ID-switch
/// detection against `state`, which is updated in place. Assignment columns
/// are ordered by each hypothesis mask's first pixel in raster order, so
/// results do not depend on the numeric hypothesis ids.
FrameMatchResult match_frame(CorrespondenceState& state, const LabelMap& gt, const LabelMap& pred,
                             const MatchConfig& config);

FrameMatchResult match_frame(CorrespondenceState& state, const std::vector<Instance>& gt,
                             const std::vector<Instance>& pred, const MatchConfig& config);

}  // namespace objmot
