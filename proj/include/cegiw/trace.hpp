#pragma once

#include <set>
#include <string>
#include <vector>

#include "cegiw/interval.hpp"

namespace cegiw {

// Atoms holding in one trace position.
using State = std::set<std::string>;

// Ultimately periodic trace prefix . suffix^omega in canonical form:
// the suffix is primitive (not a repetition of a shorter word) and the last
// prefix state differs from the last suffix state (otherwise the prefix tail
// could be rotated into the loop). The constructor canonicalizes, so every
// LassoTrace in the system is canonical by construction.
class LassoTrace {
 public:
  LassoTrace(std::vector<State> prefix, std::vector<State> suffix);

  const std::vector<State>& prefix() const { return prefix_; }
  const std::vector<State>& suffix() const { return suffix_; }

  // |prefix| + |suffix|.
  TimePoint total_length() const { return prefix_.size() + suffix_.size(); }

  const State& state_at(TimePoint t) const;

  bool operator==(const LassoTrace&) const = default;

 private:
  std::vector<State> prefix_;
  std::vector<State> suffix_;
};

LassoTrace canonicalize(std::vector<State> prefix, std::vector<State> suffix);

// Last position that can matter for a scan starting at absolute position a:
// |prefix|+|suffix| when a lies in the prefix, a+|suffix|-1 once a is in the
// loop. Beyond it every position repeats the state and the future of an
// already covered one.
TimePoint end_index(const LassoTrace& pi, TimePoint a);

struct CoverInterval {
  TimePoint lo;
  TimePoint hi;
  bool operator==(const CoverInterval&) const = default;
};

// [i.lo, min(i.hi, end_index(pi, i.lo))]: the finite window that decides any
// quantifier over i on pi.
CoverInterval covering(const LassoTrace& pi, const Interval& i);

// Deterministic rendering, also used as a dedup/sort key:
// {a,b} {c} ; {d} renders prefix states, ";", suffix states.
std::string trace_key(const LassoTrace& pi);

// {"prefix": [["p","q"], ...], "suffix": [...]} with atoms sorted.
std::string trace_to_json(const LassoTrace& pi);
LassoTrace trace_from_json(const std::string& text);

}  // namespace cegiw
