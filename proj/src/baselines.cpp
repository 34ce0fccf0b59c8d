#include "objmot/baselines.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace objmot {

namespace {

double color_distance(const Frame& a, int ra, int ca, const Frame& b, int rb, int cb) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = a.channels[k](ra, ca) - b.channels[k](rb, cb);
    s += d * d;
  }
  return std::sqrt(s);
}

std::uint32_t color_key(const Frame& f, int r, int c) {
  std::uint32_t key = 0;
  for (int k = 0; k < 3; ++k)
    key = (key << 8) | static_cast<std::uint32_t>(std::lround(std::clamp(f.channels[k](r, c), 0.0, 1.0) * 255.0));
  return key;
}

}  // namespace

PredictionSet oracle_tracker(const VideoSample& sequence, const std::vector<int>& background_ids) {
  PredictionSet p;
  p.labels = sequence.gt;
  p.reconstructions = sequence.frames;
  p.meta.producer = "oracle";
  p.meta.background_ids = background_ids;
  return p;
}

Frame estimate_background(const std::vector<Frame>& frames, BackgroundModel model) {
  if (frames.empty()) return {};
  const int h = frames.front().height(), w = frames.front().width();
  if (model == BackgroundModel::dominant_color) {
    std::unordered_map<std::uint32_t, long> counts;
    for (const auto& f : frames)
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) ++counts[color_key(f, r, c)];
    std::uint32_t best = 0;
    long best_count = -1;
    for (const auto& [key, n] : counts)
      if (n > best_count || (n == best_count && key < best)) {
        best = key;
        best_count = n;
      }
    const Rgb color((best >> 16 & 0xff) / 255.0, (best >> 8 & 0xff) / 255.0, (best & 0xff) / 255.0);
    return Frame(h, w, color);
  }
  Frame out(h, w);
  std::vector<double> values(frames.size());
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        for (std::size_t t = 0; t < frames.size(); ++t) values[t] = frames[t].channels[k](r, c);
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        out.channels[k](r, c) = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
      }
  return out;
}

LabelMap color_components(const Frame& frame, const Frame& background, double threshold) {
  const int h = frame.height(), w = frame.width();
  LabelMap labels = LabelMap::Zero(h, w);
  Mask fg(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) fg(r, c) = color_distance(frame, r, c, background, r, c) > threshold;

  int next = 0;
  std::vector<std::pair<int, int>> stack;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!fg(r, c) || labels(r, c) != 0) continue;
      labels(r, c) = ++next;
      stack.assign(1, {r, c});
      while (!stack.empty()) {
        const auto [pr, pc] = stack.back();
        stack.pop_back();
        constexpr int dr[4] = {-1, 1, 0, 0};
        constexpr int dc[4] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
          const int nr = pr + dr[d], nc = pc + dc[d];
          if (nr < 0 || nc < 0 || nr >= h || nc >= w) continue;
          if (!fg(nr, nc) || labels(nr, nc) != 0) continue;
          if (color_distance(frame, pr, pc, frame, nr, nc) > threshold) continue;
          labels(nr, nc) = next;
          stack.emplace_back(nr, nc);
        }
      }
    }
  }
  return labels;
}

PredictionSet color_tracker(const std::vector<Frame>& frames, const ColorTrackerParams& params) {
  PredictionSet out;
  out.meta.producer = "color";
  char buf[160];
  std::snprintf(buf, sizeof buf, "color_threshold=%.6g link_iou=%.6g background=%s", params.color_threshold,
                params.link_iou,
                params.fixed_background                                  ? "fixed"
                : params.background == BackgroundModel::dominant_color ? "dominant_color"
                                                                         : "temporal_median");
  out.meta.parameters = buf;
  if (frames.empty()) return out;

  const int h = frames.front().height(), w = frames.front().width();
  const Frame background = params.fixed_background ? Frame(h, w, *params.fixed_background)
                                                   : estimate_background(frames, params.background);
  LabelMap previous = LabelMap::Zero(h, w);
  int next_id = 1;

  for (const Frame& frame : frames) {
    const LabelMap comps = color_components(frame, background, params.color_threshold);

    std::map<int, long> comp_area, prev_area;
    std::map<std::pair<int, int>, long> inter;
    for (Eigen::Index i = 0; i < comps.size(); ++i) {
      const int a = comps.data()[i], b = previous.data()[i];
      if (a) ++comp_area[a];
      if (b) ++prev_area[b];
      if (a && b) ++inter[{a, b}];
    }
    std::vector<std::tuple<double, int, int>> candidates;  // (iou, comp, prev id)
    for (const auto& [key, n] : inter) {
      const double v = static_cast<double>(n) / static_cast<double>(comp_area[key.first] + prev_area[key.second] - n);
      if (v >= params.link_iou) candidates.emplace_back(v, key.first, key.second);
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
      if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
      return std::make_pair(std::get<1>(x), std::get<2>(x)) < std::make_pair(std::get<1>(y), std::get<2>(y));
    });

    std::map<int, int> assigned;  // component -> hypothesis id
    std::set<int> taken;
    for (const auto& [v, comp, prev] : candidates) {
      if (assigned.count(comp) || taken.count(prev)) continue;
      assigned[comp] = prev;
      taken.insert(prev);
    }
    for (const auto& [comp, area] : comp_area) {
      if (assigned.count(comp)) continue;
      int id;
      if (next_id <= 255) {
        id = next_id++;
      } else {
        // Ids must fit an 8-bit label map; reuse one absent from both frames.
        id = 1;
        while (id <= 255 && (prev_area.count(id) || taken.count(id))) ++id;
        if (id > 255) continue;  // more than 255 live components: leave unlabeled
      }
      assigned[comp] = id;
      taken.insert(id);
    }

    LabelMap labels = comps.unaryExpr([&](std::int32_t c) { return c ? std::int32_t{assigned.count(c) ? assigned[c] : 0} : 0; });
    out.labels.push_back(labels);
    previous = std::move(labels);
  }
  return out;
}

}  // namespace objmot
