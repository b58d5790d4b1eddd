#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace cegiw {

// Discrete time index into a trace.
using TimePoint = std::uint64_t;

// Closed interval [lo, hi] over the naturals. An absent hi means +infinity;
// every comparison and arithmetic helper treats infinity as larger than any
// natural (saturating), so [a, inf] extended or contracted on the right is
// still [a, inf].
class Interval {
 public:
  Interval() = default;  // [0, 0]

  static Interval bounded(TimePoint lo, TimePoint hi);
  static Interval unbounded(TimePoint lo);

  TimePoint lo() const { return lo_; }
  const std::optional<TimePoint>& hi() const { return hi_; }
  bool is_bounded() const { return hi_.has_value(); }

  bool contains(TimePoint t) const;

  // min(hi, cap); collapses the right edge to a finite value.
  TimePoint hi_capped(TimePoint cap) const;

  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Interval(TimePoint lo, std::optional<TimePoint> hi);

  TimePoint lo_ = 0;
  std::optional<TimePoint> hi_ = 0;
};

}  // namespace cegiw
