#include "objmot/metrics.hpp"

#include <cmath>

namespace objmot {

void FixedSum::add(double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw InvalidParameter("FixedSum: value outside [0, 1]");
  raw_ += static_cast<__int128>(std::nearbyint(std::ldexp(value, kFractionBits)));
}

double FixedSum::value() const {
  return static_cast<double>(std::ldexp(static_cast<long double>(raw_), -kFractionBits));
}

double FixedSum::ratio(std::int64_t denominator) const {
  const long double v = std::ldexp(static_cast<long double>(raw_), -kFractionBits);
  return static_cast<double>(v / static_cast<long double>(denominator));
}

SequenceStats SequenceStats::for_sequence(std::uint64_t sequence, int object_count) {
  SequenceStats s;
  s.sequence = sequence;
  s.sequences = 1;
  s.object_count = object_count;
  return s;
}

void accumulate(SequenceStats& stats, const FrameMatchResult& frame, int frame_index, const EvalWindow& window) {
  if (!window.contains(frame_index)) return;
  stats.objects += frame.visible_objects();
  stats.matches += static_cast<std::int64_t>(frame.pairs.size());
  stats.misses += static_cast<std::int64_t>(frame.misses.size());
  stats.false_positives += static_cast<std::int64_t>(frame.false_positives.size());
  stats.switches += static_cast<std::int64_t>(frame.id_switches.size());
  for (const auto& p : frame.pairs) {
    stats.iou_sum.add(p.iou);
    auto& rec = stats.per_object[{stats.sequence, p.gt}];
    ++rec.visible;
    ++rec.matched;
  }
  for (int g : frame.misses) ++stats.per_object[{stats.sequence, g}].visible;
  for (int g : frame.id_switches) ++stats.per_object[{stats.sequence, g}].switches;
}

void accumulate_mse(SequenceStats& stats, const Frame& reconstruction, const Frame& frame, int frame_index,
                    const EvalWindow& window) {
  if (!window.contains(frame_index)) return;
  if (reconstruction.height() != frame.height() || reconstruction.width() != frame.width())
    throw InvalidParameter("mse: reconstruction and frame shapes differ");
  for (int c = 0; c < 3; ++c) {
    const Plane& a = reconstruction.channels[c];
    const Plane& b = frame.channels[c];
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double d = a.data()[i] - b.data()[i];
      stats.squared_error_sum.add(std::min(1.0, d * d));
    }
  }
  stats.squared_error_count += 3LL * frame.height() * frame.width();
}

SequenceStats merge(const SequenceStats& a, const SequenceStats& b) {
  SequenceStats out = a;
  if (a.sequences == 0)
    out.sequence = b.sequence;
  else if (b.sequences > 0)
    out.sequence = std::min(a.sequence, b.sequence);
  out.misses += b.misses;
  out.false_positives += b.false_positives;
  out.switches += b.switches;
  out.objects += b.objects;
  out.matches += b.matches;
  out.sequences += b.sequences;
  out.iou_sum += b.iou_sum;
  out.squared_error_sum += b.squared_error_sum;
  out.squared_error_count += b.squared_error_count;
  for (const auto& [key, rec] : b.per_object) {
    auto& dst = out.per_object[key];
    dst.visible += rec.visible;
    dst.matched += rec.matched;
    dst.switches += rec.switches;
  }
  if (!a.object_count)
    out.object_count = b.object_count;
  else if (b.object_count && *b.object_count != *a.object_count)
    out.object_count = SequenceStats::kMixedCount;
  return out;
}

double mota(const SequenceStats& s) {
  if (s.objects <= 0) throw UndefinedMetric("MOTA undefined: no object occurrences");
  return 1.0 - static_cast<double>(s.misses + s.false_positives + s.switches) / static_cast<double>(s.objects);
}

double motp(const SequenceStats& s) {
  if (s.matches <= 0) throw UndefinedMetric("MOTP undefined: no matches");
  return s.iou_sum.ratio(s.matches);
}

MdMt md_mt(const SequenceStats& s, double lifespan_threshold) {
  std::int64_t eligible = 0, detected = 0, tracked = 0;
  for (const auto& [key, rec] : s.per_object) {
    if (rec.visible <= 0) continue;
    ++eligible;
    if (static_cast<double>(rec.matched) >= lifespan_threshold * static_cast<double>(rec.visible) - 1e-9) {
      ++detected;
      if (rec.switches == 0) ++tracked;
    }
  }
  if (eligible == 0) throw UndefinedMetric("MD/MT undefined: no visible objects");
  return {static_cast<double>(detected) / eligible, static_cast<double>(tracked) / eligible};
}

FailureFractions failure_fractions(const SequenceStats& s) {
  if (s.objects <= 0) throw UndefinedMetric("failure fractions undefined: no object occurrences");
  const auto o = static_cast<double>(s.objects);
  return {s.matches / o, s.misses / o, s.switches / o, s.false_positives / o};
}

double mse(const std::vector<Frame>& reconstructions, const std::vector<Frame>& frames) {
  if (reconstructions.size() != frames.size()) throw InvalidParameter("mse: frame counts differ");
  SequenceStats s;
  for (std::size_t t = 0; t < frames.size(); ++t)
    accumulate_mse(s, reconstructions[t], frames[t], static_cast<int>(t));
  return mse(s);
}

double mse(const SequenceStats& s) {
  if (s.squared_error_count <= 0) throw UndefinedMetric("MSE undefined: no reconstructions");
  return s.squared_error_sum.ratio(s.squared_error_count);
}

std::map<int, FailureFractions> breakdown_by_object_count(const std::vector<SequenceStats>& per_sequence) {
  std::map<int, SequenceStats> groups;
  for (const auto& s : per_sequence) {
    const int key = s.object_count.value_or(0);
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(key, s);
    else
      it->second = merge(it->second, s);
  }
  std::map<int, FailureFractions> out;
  for (const auto& [k, s] : groups)
    if (s.objects > 0) out[k] = failure_fractions(s);
  return out;
}

MetricsRow compute_row(const SequenceStats& s, double lifespan_threshold) {
  MetricsRow row;
  row.sequences = s.sequences;
  row.objects = s.objects;
  row.matches = s.matches;
  row.misses = s.misses;
  row.false_positives = s.false_positives;
  row.switches = s.switches;
  for (const auto& [key, rec] : s.per_object)
    if (rec.visible > 0) ++row.tracks;
  if (s.objects > 0) {
    row.mota = mota(s);
    const auto f = failure_fractions(s);
    row.match = f.match;
    row.miss = f.miss;
    row.idsw = f.idsw;
    row.fp = f.fp;
  }
  if (s.matches > 0) row.motp = motp(s);
  if (row.tracks > 0) {
    const auto m = md_mt(s, lifespan_threshold);
    row.md = m.md;
    row.mt = m.mt;
  }
  if (s.squared_error_count > 0) row.mse = mse(s);
  return row;
}

MetricsReport make_report(const std::vector<SequenceStats>& per_sequence, bool breakdown, double lifespan_threshold) {
  MetricsReport report;
  SequenceStats total;
  std::map<int, SequenceStats> groups;
  for (const auto& s : per_sequence) {
    total = merge(total, s);
    if (breakdown) {
      const int key = s.object_count.value_or(0);
      auto it = groups.find(key);
      if (it == groups.end())
        groups.emplace(key, s);
      else
        it->second = merge(it->second, s);
    }
  }
  report.overall = compute_row(total, lifespan_threshold);
  for (const auto& [k, s] : groups) report.by_object_count[k] = compute_row(s, lifespan_threshold);
  return report;
}

}  // namespace objmot
