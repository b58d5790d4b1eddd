#include "cegiw/fretish.hpp"

#include <stdexcept>

namespace cegiw {

FretishTiming FretishTiming::within(TimePoint n) { return FretishTiming{Kind::Within, n}; }

FretishTiming FretishTiming::lasting(TimePoint n) {
  if (n < 1) throw std::invalid_argument("a 'for' timing needs at least one step");
  return FretishTiming{Kind::For, n};
}

FretishTiming FretishTiming::eventually() { return FretishTiming{Kind::Eventually, 0}; }

FretishTiming FretishTiming::always() { return FretishTiming{Kind::Always, 0}; }

Formula timing_to_mtl(const FretishTiming& timing, const Formula& response) {
  switch (timing.kind) {
    case FretishTiming::Kind::Within:
      return Formula::eventually(Interval::bounded(0, timing.n), response);
    case FretishTiming::Kind::For:
      return Formula::globally(Interval::bounded(1, timing.n), response);
    case FretishTiming::Kind::Eventually:
      return Formula::eventually(Interval::unbounded(0), response);
    case FretishTiming::Kind::Always:
      return Formula::globally(Interval::unbounded(0), response);
  }
  throw std::logic_error("unhandled timing kind");
}

}  // namespace cegiw
