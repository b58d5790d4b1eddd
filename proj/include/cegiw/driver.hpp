#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cegiw/context.hpp"
#include "cegiw/formula.hpp"
#include "cegiw/model.hpp"
#include "cegiw/weaken.hpp"

namespace cegiw {

struct IterationRecord {
  std::uint64_t iteration = 0;  // 1-based
  Interval interval_before;
  std::vector<LassoTrace> counterexamples_used;
  std::vector<WeakenOutcome> per_trace_outcomes;
  // Adopted interval; empty when some counterexample admits no weakening.
  std::optional<Interval> interval_after;
  bool check_holds = false;
  std::uint64_t check_bound = 0;
  double wall_time_ms = 0.0;
};

enum class CegiwStatus { Weakened, NoWeakening, Exhausted };

struct CegiwResult {
  CegiwStatus status = CegiwStatus::Exhausted;
  std::optional<Interval> final_interval;  // Weakened only
  std::optional<LassoTrace> witness;       // NoWeakening only
  std::vector<IterationRecord> log;
};

// Pluggable bounded-check backend with check_bounded's signature and
// contract.
using CheckFn =
    std::function<CheckVerdict(const Model&, const Formula&, std::uint64_t, std::size_t)>;

// Iterates: check the current substitution, stop if it holds; otherwise
// weaken the interval against every counterexample and adopt the weakest
// outcome. Returns NoWeakening (with the first such trace as witness) when a
// counterexample admits no modification at all, since a weakening that fails
// on one model trace fails on the model. Counterexamples from earlier
// iterations are kept and consumed first while they still violate the
// current substitution, skipping redundant checker calls.
CegiwResult run_cegiw(const Model& m, const Context& c, const TemporalNode& target,
                      std::uint64_t bound, std::uint64_t max_iterations,
                      std::size_t max_counterexamples, CheckFn check = nullptr);

// One JSON object per iteration, one line each.
std::string iteration_log_json(const std::vector<IterationRecord>& log);

// iteration,lo,hi rows; hi is "inf" for an unbounded interval and "none" when
// the iteration found no weakening.
std::string iteration_log_csv(const std::vector<IterationRecord>& log);

}  // namespace cegiw
