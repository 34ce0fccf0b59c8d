#pragma once

#include <optional>
#include <vector>

#include "objmot/core.hpp"
#include "objmot/raster.hpp"
#include "objmot/storage.hpp"

namespace objmot {

/// Ground-truth label maps (and frames as reconstructions) echoed back.
PredictionSet oracle_tracker(const VideoSample& sequence, const std::vector<int>& background_ids = {});

enum class BackgroundModel {
  dominant_color,   // most frequent color over the whole sequence
  temporal_median,  // per-pixel median over time
};

struct ColorTrackerParams {
  double color_threshold = 0.15;  // Euclidean RGB distance
  double link_iou = 0.3;
  BackgroundModel background = BackgroundModel::dominant_color;
  /// Fixed background color; overrides the model (SpMOT: black).
  std::optional<Rgb> fixed_background;
};

/// Per-pixel background estimate for a sequence.
Frame estimate_background(const std::vector<Frame>& frames, BackgroundModel model);

/// Foreground pixels (farther than the threshold from the background) grouped
/// into 4-connected components of mutually similar color. Component labels
/// start at 1 in scan order.
LabelMap color_components(const Frame& frame, const Frame& background, double threshold);

/// Background subtraction + color components, linked frame to frame by
/// greedy highest-IoU matching.
PredictionSet color_tracker(const std::vector<Frame>& frames, const ColorTrackerParams& params = {});

}  // namespace objmot
