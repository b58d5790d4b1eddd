#include "cegiw/driver.hpp"

#include <chrono>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "cegiw/eval.hpp"

namespace cegiw {

CegiwResult run_cegiw(const Model& m, const Context& c, const TemporalNode& target,
                      std::uint64_t bound, std::uint64_t max_iterations,
                      std::size_t max_counterexamples, CheckFn check) {
  if (!check) {
    check = [](const Model& model, const Formula& phi, std::uint64_t b, std::size_t k) {
      return check_bounded(model, phi, b, k);
    };
  }

  CegiwResult result;
  Interval current = target.interval;
  ModificationKind mk = modification_kind(target.kind);

  std::vector<LassoTrace> pool;
  std::set<std::string> pool_keys;

  for (std::uint64_t iteration = 1; iteration <= max_iterations; ++iteration) {
    auto started = std::chrono::steady_clock::now();
    IterationRecord record;
    record.iteration = iteration;
    record.interval_before = current;
    record.check_bound = bound;

    TemporalNode shifted = target.with_interval(current);
    Formula phi = substitute(c, shifted.to_formula());

    std::vector<LassoTrace> counterexamples;
    for (const LassoTrace& trace : pool) {
      if (counterexamples.size() >= max_counterexamples) break;
      if (!holds(trace, phi)) counterexamples.push_back(trace);
    }
    if (counterexamples.empty()) {
      CheckVerdict verdict = check(m, phi, bound, max_counterexamples);
      record.check_holds = verdict.holds;
      record.check_bound = verdict.bound;
      if (verdict.holds) {
        record.interval_after = current;
        record.wall_time_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
        result.log.push_back(std::move(record));
        result.status = CegiwStatus::Weakened;
        result.final_interval = current;
        return result;
      }
      counterexamples = verdict.counterexamples;
      for (const LassoTrace& trace : counterexamples) {
        std::string key = trace_key(trace);
        if (pool_keys.insert(std::move(key)).second) pool.push_back(trace);
      }
    }

    record.counterexamples_used = counterexamples;
    std::vector<Interval> adopted;
    std::optional<LassoTrace> dead_end;
    for (const LassoTrace& trace : counterexamples) {
      if (holds(trace, phi)) {
        throw std::logic_error("counterexample does not violate the checked formula");
      }
      WeakenOutcome outcome = weaken(c, shifted, trace, 0);
      record.per_trace_outcomes.push_back(outcome);
      if (!outcome) {
        dead_end = trace;
        break;
      }
      adopted.push_back(*outcome);
    }

    if (dead_end) {
      record.wall_time_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();
      result.log.push_back(std::move(record));
      result.status = CegiwStatus::NoWeakening;
      result.witness = std::move(dead_end);
      return result;
    }

    current = weakest_of(mk, adopted);
    record.interval_after = current;
    record.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    result.log.push_back(std::move(record));
  }

  result.status = CegiwStatus::Exhausted;
  return result;
}

namespace {

nlohmann::json interval_json(const Interval& i) {
  nlohmann::json j;
  j["lo"] = i.lo();
  if (i.is_bounded()) {
    j["hi"] = *i.hi();
  } else {
    j["hi"] = nullptr;
  }
  return j;
}

}  // namespace

std::string iteration_log_json(const std::vector<IterationRecord>& log) {
  std::string out;
  for (const IterationRecord& r : log) {
    nlohmann::json j;
    j["iteration"] = r.iteration;
    j["interval_before"] = interval_json(r.interval_before);
    j["counterexamples"] = nlohmann::json::array();
    for (const LassoTrace& trace : r.counterexamples_used) {
      j["counterexamples"].push_back(nlohmann::json::parse(trace_to_json(trace)));
    }
    j["outcomes"] = nlohmann::json::array();
    for (const WeakenOutcome& o : r.per_trace_outcomes) {
      j["outcomes"].push_back(o ? interval_json(*o) : nlohmann::json(nullptr));
    }
    j["interval_after"] = r.interval_after ? interval_json(*r.interval_after)
                                           : nlohmann::json(nullptr);
    j["check_holds"] = r.check_holds;
    j["check_bound"] = r.check_bound;
    j["wall_time_ms"] = r.wall_time_ms;
    out += j.dump();
    out += "\n";
  }
  return out;
}

std::string iteration_log_csv(const std::vector<IterationRecord>& log) {
  std::string out = "iteration,lo,hi\n";
  for (const IterationRecord& r : log) {
    out += std::to_string(r.iteration);
    out += ",";
    if (r.interval_after) {
      out += std::to_string(r.interval_after->lo());
      out += ",";
      out += r.interval_after->is_bounded() ? std::to_string(*r.interval_after->hi())
                                            : std::string("inf");
    } else {
      out += std::to_string(r.interval_before.lo());
      out += ",none";
    }
    out += "\n";
  }
  return out;
}

}  // namespace cegiw
