#pragma once

#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "objmot/core.hpp"
#include "objmot/matcher.hpp"

namespace objmot {

/// Exact accumulator for values in [0, 1]: each term is rounded to a
/// multiple of 2^-80 and summed in 128-bit integers, so addition is
/// associative and merge order never changes a result. Doubles in [2^-27, 1]
/// are represented without rounding.
class FixedSum {
 public:
  static constexpr int kFractionBits = 80;

  void add(double value);
  FixedSum& operator+=(const FixedSum& other) {
    raw_ += other.raw_;
    return *this;
  }
  double value() const;
  /// value() / denominator computed in extended precision.
  double ratio(std::int64_t denominator) const;

  friend bool operator==(const FixedSum&, const FixedSum&) = default;

 private:
  __int128 raw_ = 0;
};

/// Frames [start, end) are counted; matching still runs on every frame.
struct EvalWindow {
  int start = 0;
  int end = INT_MAX;

  bool contains(int t) const { return t >= start && t < end; }
};

struct ObjectKey {
  std::uint64_t sequence = 0;
  int gt = 0;

  friend auto operator<=>(const ObjectKey&, const ObjectKey&) = default;
};

struct ObjectRecord {
  std::int64_t visible = 0;
  std::int64_t matched = 0;
  std::int64_t switches = 0;

  friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

struct SequenceStats {
  std::uint64_t sequence = 0;  // key for per-object records
  std::int64_t misses = 0;
  std::int64_t false_positives = 0;
  std::int64_t switches = 0;
  std::int64_t objects = 0;  // object occurrences
  std::int64_t matches = 0;
  std::int64_t sequences = 0;
  FixedSum iou_sum;
  FixedSum squared_error_sum;
  std::int64_t squared_error_count = 0;
  std::map<ObjectKey, ObjectRecord> per_object;
  /// Ground-truth objects in the scene; kMixedCount after merging sequences
  /// with different counts, nullopt for the empty element.
  std::optional<int> object_count;

  static constexpr int kMixedCount = -1;

  /// Fresh per-sequence stats.
  static SequenceStats for_sequence(std::uint64_t sequence, int object_count);

  friend bool operator==(const SequenceStats&, const SequenceStats&) = default;
};

void accumulate(SequenceStats& stats, const FrameMatchResult& frame, int frame_index, const EvalWindow& window = {});

/// Adds the squared reconstruction error of one frame if it lies in the window.
void accumulate_mse(SequenceStats& stats, const Frame& reconstruction, const Frame& frame, int frame_index,
                    const EvalWindow& window = {});

SequenceStats merge(const SequenceStats& a, const SequenceStats& b);

double mota(const SequenceStats& stats);
double motp(const SequenceStats& stats);

struct MdMt {
  double md = 0.0;
  double mt = 0.0;
};

MdMt md_mt(const SequenceStats& stats, double lifespan_threshold = 0.8);

struct FailureFractions {
  double match = 0.0;
  double miss = 0.0;
  double idsw = 0.0;
  double fp = 0.0;
};

FailureFractions failure_fractions(const SequenceStats& stats);

double mse(const std::vector<Frame>& reconstructions, const std::vector<Frame>& frames);
double mse(const SequenceStats& stats);

std::map<int, FailureFractions> breakdown_by_object_count(const std::vector<SequenceStats>& per_sequence);

/// Every metric for one group of sequences. Undefined values stay nullopt.
struct MetricsRow {
  std::int64_t sequences = 0;
  std::int64_t objects = 0;
  std::int64_t matches = 0;
  std::int64_t misses = 0;
  std::int64_t false_positives = 0;
  std::int64_t switches = 0;
  std::int64_t tracks = 0;  // objects eligible for MD/MT
  std::optional<double> mota, motp, md, mt, match, miss, idsw, fp, mse;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct MetricsReport {
  MetricsRow overall;
  std::map<int, MetricsRow> by_object_count;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsRow compute_row(const SequenceStats& stats, double lifespan_threshold = 0.8);

MetricsReport make_report(const std::vector<SequenceStats>& per_sequence, bool breakdown,
                          double lifespan_threshold = 0.8);

}  // namespace objmot
