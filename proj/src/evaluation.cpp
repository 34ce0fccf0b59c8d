#include "objmot/evaluation.hpp"

#include <algorithm>
#include <string>

namespace objmot {

namespace {

LabelMap zero_labels(const LabelMap& labels, const std::vector<int>& ids) {
  if (ids.empty()) return labels;
  return labels.unaryExpr([&](std::int32_t l) {
    return std::find(ids.begin(), ids.end(), l) != ids.end() ? std::int32_t{0} : l;
  });
}

}  // namespace

std::vector<Mask> background_masks(const LabelMap& gt, const std::vector<int>& background_ids) {
  std::vector<Mask> out;
  Mask unlabeled = gt == 0;
  if (unlabeled.any()) out.push_back(std::move(unlabeled));
  for (int id : background_ids) {
    Mask m = gt == id;
    if (m.any()) out.push_back(std::move(m));
  }
  return out;
}

SequenceStats evaluate_sequence(const SequenceEvalInput& in, const EvalOptions& options) {
  options.match.validate();
  if (!in.gt || !in.pred) throw InvalidParameter("evaluate_sequence: missing ground truth or predictions");
  if (in.gt->size() != in.pred->size())
    throw ValidationError("evaluate_sequence: " + std::to_string(in.pred->size()) + " prediction frames for " +
                          std::to_string(in.gt->size()) + " ground-truth frames");

  SequenceStats stats = SequenceStats::for_sequence(in.key, in.object_count);
  const EvalWindow window{options.eval_start, static_cast<int>(in.gt->size())};
  CorrespondenceState state;
  const int first = options.reset_state_at_window ? std::max(0, options.eval_start) : 0;
  for (int t = first; t < static_cast<int>(in.gt->size()); ++t) {
    const LabelMap& raw_gt = (*in.gt)[static_cast<std::size_t>(t)];
    const LabelMap gt = zero_labels(raw_gt, in.gt_background_ids);
    LabelMap pred = zero_labels((*in.pred)[static_cast<std::size_t>(t)], in.pred_background_ids);
    if (options.exclude_background)
      pred = exclude_background(pred, background_masks(raw_gt, in.gt_background_ids),
                                options.match.background_iou_threshold);
    accumulate(stats, match_frame(state, gt, pred, options.match), t, window);
  }

  if (in.frames && in.reconstructions) {
    if (in.frames->size() != in.reconstructions->size())
      throw ValidationError("evaluate_sequence: reconstruction count differs from frame count");
    for (std::size_t t = 0; t < in.frames->size(); ++t)
      accumulate_mse(stats, (*in.reconstructions)[t], (*in.frames)[t], static_cast<int>(t), window);
  }
  return stats;
}

}  // namespace objmot
