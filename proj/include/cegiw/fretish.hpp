#pragma once

#include "cegiw/formula.hpp"
#include "cegiw/interval.hpp"

namespace cegiw {

// Structured-English timing field of a requirement's response clause.
struct FretishTiming {
  enum class Kind { Within, For, Eventually, Always };

  Kind kind = Kind::Eventually;
  TimePoint n = 0;

  static FretishTiming within(TimePoint n);  // satisfied no later than n steps out
  static FretishTiming lasting(TimePoint n);  // held for the next n steps; n >= 1
  static FretishTiming eventually();
  static FretishTiming always();

  bool operator==(const FretishTiming&) const = default;
};

// Within(n) -> F[0,n] response; For(n) -> G[1,n] response;
// Eventually -> F[0,inf] response; Always -> G[0,inf] response.
Formula timing_to_mtl(const FretishTiming& timing, const Formula& response);

}  // namespace cegiw
