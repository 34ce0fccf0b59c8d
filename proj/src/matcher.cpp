#include "objmot/matcher.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace objmot {

namespace {

constexpr double kTieTolerance = 1e-12;

// Square min-cost assignment (Kuhn-Munkres with potentials, O(n^3)).
// Returns the column assigned to each row.
std::vector<int> solve_min_cost(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

// Best achievable total using the given rows and columns.
double best_total(const Eigen::MatrixXd& scores, double threshold, const std::vector<int>& rows,
                  const std::vector<int>& cols) {
  const int n = static_cast<int>(std::max(rows.size(), cols.size()));
  if (n == 0) return 0.0;
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const double s = scores(rows[a], cols[b]);
      if (s >= threshold) cost(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = -s;
    }
  const auto assign = solve_min_cost(cost);
  double total = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const int b = assign[a];
    if (b >= 0 && static_cast<std::size_t>(b) < cols.size()) {
      const double s = scores(rows[a], cols[static_cast<std::size_t>(b)]);
      if (s >= threshold) total += s;
    }
  }
  return total;
}

struct Overlaps {
  std::map<int, long> gt_area;
  std::map<int, long> pred_area;
  std::map<std::pair<int, int>, long> inter;

  double iou(int g, int p) const {
    const auto it = inter.find({g, p});
    if (it == inter.end()) return 0.0;
    const double i = static_cast<double>(it->second);
    return i / (static_cast<double>(gt_area.at(g) + pred_area.at(p)) - i);
  }
};

Overlaps count_overlaps(const LabelMap& gt, const LabelMap& pred) {
  Overlaps o;
  for (Eigen::Index i = 0; i < gt.size(); ++i) {
    const int g = gt.data()[i];
    const int p = pred.data()[i];
    if (g != 0) ++o.gt_area[g];
    if (p != 0) ++o.pred_area[p];
    if (g != 0 && p != 0) ++o.inter[{g, p}];
  }
  return o;
}

}  // namespace

void MatchConfig::validate() const {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0))
    throw InvalidParameter("iou_threshold must be in (0, 1]");
  if (!(background_iou_threshold > 0.0 && background_iou_threshold <= 1.0))
    throw InvalidParameter("background_iou_threshold must be in (0, 1]");
}

double iou(const Mask& a, const Mask& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidParameter("iou: mask dimensions differ");
  const auto inter = (a && b).count();
  const auto uni = (a || b).count();
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

LabelMap exclude_background(const LabelMap& pred, const std::vector<Mask>& background, double threshold) {
  if (background.empty()) return pred;
  std::set<int> drop;
  for (const Instance& inst : instances_from_labels(pred)) {
    for (const Mask& bg : background) {
      if (iou(inst.mask, bg) > threshold) {
        drop.insert(inst.id);
        break;
      }
    }
  }
  if (drop.empty()) return pred;
  return pred.unaryExpr([&](std::int32_t l) { return drop.count(l) ? std::int32_t{0} : l; });
}

Assignment hungarian(const Eigen::MatrixXd& scores, double threshold) {
  if (!scores.allFinite()) throw InvalidParameter("hungarian: scores must be finite");
  // Only rows/columns with at least one admissible entry can be assigned.
  std::vector<int> rows, cols;
  for (int r = 0; r < scores.rows(); ++r)
    if ((scores.row(r).array() >= threshold).any()) rows.push_back(r);
  for (int c = 0; c < scores.cols(); ++c)
    if ((scores.col(c).array() >= threshold).any()) cols.push_back(c);

  const double optimum = best_total(scores, threshold, rows, cols);

  // Fix rows in order, taking the smallest column (then "unassigned") that
  // still reaches the optimum.
  Assignment out;
  double fixed = 0.0;
  std::vector<int> free_cols = cols;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int r = rows[k];
    const std::vector<int> later(rows.begin() + static_cast<std::ptrdiff_t>(k) + 1, rows.end());
    bool placed = false;
    for (std::size_t ci = 0; ci < free_cols.size() && !placed; ++ci) {
      const int c = free_cols[ci];
      const double s = scores(r, c);
      if (s < threshold) continue;
      std::vector<int> rest = free_cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(ci));
      if (fixed + s + best_total(scores, threshold, later, rest) >= optimum - kTieTolerance) {
        out.pairs.emplace_back(r, c);
        fixed += s;
        free_cols = std::move(rest);
        placed = true;
      }
    }
  }
  for (const auto& [r, c] : out.pairs) out.total += scores(r, c);
  return out;
}

std::vector<Instance> instances_from_labels(const LabelMap& labels) {
  std::set<int> ids;
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels.data()[i] != 0) ids.insert(labels.data()[i]);
  std::vector<Instance> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back({id, labels == id});
  return out;
}

LabelMap labels_from_instances(const std::vector<Instance>& instances, int height, int width) {
  LabelMap labels = LabelMap::Zero(height, width);
  std::set<int> seen;
  for (const Instance& inst : instances) {
    if (inst.id <= 0) throw ValidationError("instance ids must be positive");
    if (inst.mask.rows() != height || inst.mask.cols() != width)
      throw InvalidParameter("instance mask dimensions differ from frame");
    if (!seen.insert(inst.id).second) throw ValidationError("duplicate instance id " + std::to_string(inst.id));
    if ((inst.mask && (labels != 0)).any())
      throw ValidationError("instance " + std::to_string(inst.id) + " overlaps another mask");
    labels = inst.mask.select(inst.id, labels);
  }
  return labels;
}

FrameMatchResult match_frame(CorrespondenceState& state, const LabelMap& gt, const LabelMap& pred,
                             const MatchConfig& config) {
  if (gt.rows() != pred.rows() || gt.cols() != pred.cols())
    throw InvalidParameter("match_frame: gt and prediction dimensions differ");
  const Overlaps o = count_overlaps(gt, pred);

  std::map<int, std::pair<int, double>> matched;  // gt -> (hyp, iou)
  std::set<int> used_hyps;

  // Carry-over: keep a remembered pair if it still clears the threshold.
  for (const auto& [g, area] : o.gt_area) {
    const auto it = state.last_hypothesis.find(g);
    if (it == state.last_hypothesis.end()) continue;
    const int h = it->second;
    if (!o.pred_area.count(h) || used_hyps.count(h)) continue;
    const double v = o.iou(g, h);
    if (v >= config.iou_threshold) {
      matched[g] = {h, v};
      used_hyps.insert(h);
    }
  }

  // Optimal assignment over whatever remains.
  std::vector<int> free_gt, free_hyp;
  for (const auto& [g, area] : o.gt_area)
    if (!matched.count(g)) free_gt.push_back(g);
  for (const auto& [h, area] : o.pred_area)
    if (!used_hyps.count(h)) free_hyp.push_back(h);
  // Columns in raster order of each mask's first pixel, so tie-breaking does
  // not depend on the numeric hypothesis ids.
  std::map<int, Eigen::Index> first_pixel;
  for (Eigen::Index i = 0; i < pred.size(); ++i)
    if (const int h = pred.data()[i]; h != 0) first_pixel.try_emplace(h, i);
  std::sort(free_hyp.begin(), free_hyp.end(), [&](int a, int b) { return first_pixel[a] < first_pixel[b]; });
  if (!free_gt.empty() && !free_hyp.empty()) {
    Eigen::MatrixXd scores(static_cast<Eigen::Index>(free_gt.size()), static_cast<Eigen::Index>(free_hyp.size()));
    for (std::size_t a = 0; a < free_gt.size(); ++a)
      for (std::size_t b = 0; b < free_hyp.size(); ++b)
        scores(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = o.iou(free_gt[a], free_hyp[b]);
    for (const auto& [r, c] : hungarian(scores, config.iou_threshold).pairs) {
      const int g = free_gt[static_cast<std::size_t>(r)];
      const int h = free_hyp[static_cast<std::size_t>(c)];
      matched[g] = {h, scores(r, c)};
      used_hyps.insert(h);
    }
  }

  FrameMatchResult result;
  for (const auto& [g, area] : o.gt_area) {
    const auto m = matched.find(g);
    if (m == matched.end()) {
      result.misses.push_back(g);
      continue;
    }
    const auto [h, v] = m->second;
    result.pairs.push_back({g, h, v});
    const auto prev = state.last_hypothesis.find(g);
    if (prev != state.last_hypothesis.end() && prev->second != h) result.id_switches.push_back(g);
    state.last_hypothesis[g] = h;
  }
  for (const auto& [h, area] : o.pred_area)
    if (!used_hyps.count(h)) result.false_positives.push_back(h);
  return result;
}

FrameMatchResult match_frame(CorrespondenceState& state, const std::vector<Instance>& gt,
                             const std::vector<Instance>& pred, const MatchConfig& config) {
  int h = 0, w = 0;
  for (const auto* side : {&gt, &pred})
    if (!side->empty()) {
      h = static_cast<int>(side->front().mask.rows());
      w = static_cast<int>(side->front().mask.cols());
    }
  return match_frame(state, labels_from_instances(gt, h, w), labels_from_instances(pred, h, w), config);
}

}  // namespace objmot
