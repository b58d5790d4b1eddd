#include "cegiw/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace cegiw {

Interval::Interval(TimePoint lo, std::optional<TimePoint> hi) : lo_(lo), hi_(hi) {
  if (hi_ && *hi_ < lo_) {
    throw std::invalid_argument("interval lower bound exceeds upper bound");
  }
}

Interval Interval::bounded(TimePoint lo, TimePoint hi) { return Interval(lo, hi); }

Interval Interval::unbounded(TimePoint lo) { return Interval(lo, std::nullopt); }

bool Interval::contains(TimePoint t) const {
  if (t < lo_) return false;
  return !hi_ || t <= *hi_;
}

TimePoint Interval::hi_capped(TimePoint cap) const {
  return hi_ ? std::min(*hi_, cap) : cap;
}

std::string Interval::str() const {
  std::string out = "[" + std::to_string(lo_) + ",";
  out += hi_ ? std::to_string(*hi_) : "inf";
  out += "]";
  return out;
}

}  // namespace cegiw
