#pragma once

#include <cstdint>
#include <vector>

#include "objmot/matcher.hpp"
#include "objmot/metrics.hpp"

namespace objmot {

struct EvalOptions {
  MatchConfig match;
  /// First counted frame. Matching still starts at frame 0 unless
  /// `reset_state_at_window` is set, in which case earlier frames are skipped
  /// entirely.
  int eval_start = 0;
  bool reset_state_at_window = false;
  /// Apply the IoU-based background-mask removal to predictions.
  bool exclude_background = false;
  double lifespan_threshold = 0.8;
};

/// One sequence worth of ground truth and predictions. Pointers are
/// non-owning; `frames`/`reconstructions` may be null.
struct SequenceEvalInput {
  std::uint64_t key = 0;
  int object_count = 0;
  const std::vector<LabelMap>* gt = nullptr;
  const std::vector<LabelMap>* pred = nullptr;
  const std::vector<Frame>* frames = nullptr;
  const std::vector<Frame>* reconstructions = nullptr;
  /// Ground-truth labels that denote background segments, not objects.
  std::vector<int> gt_background_ids;
  /// Predicted labels the producer declared as background.
  std::vector<int> pred_background_ids;
};

/// Background masks of one ground-truth frame: the unlabeled region plus
/// one mask per declared background segment (empty masks omitted).
std::vector<Mask> background_masks(const LabelMap& gt, const std::vector<int>& background_ids);

SequenceStats evaluate_sequence(const SequenceEvalInput& input, const EvalOptions& options);

}  // namespace objmot
