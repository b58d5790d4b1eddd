#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cegiw/driver.hpp"
#include "cegiw/eval.hpp"
#include "cegiw/parser.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "subprocess.hpp"

using namespace cegiw;
using namespace cegiw::testing;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Model load_model(const std::string& name) {
  return parse_model(read_file(env_or("CEGIW_MODELS_DIR", "models") + "/" + name));
}

Extraction extract_property(const std::string& text) {
  ParsedProperty p = parse_property(text);
  return extract(p.formula, p.target);
}

State st(std::initializer_list<const char*> atoms) {
  State s;
  for (const char* a : atoms) s.insert(a);
  return s;
}

}  // namespace

TEST_CASE("an unfixable counterexample ends the loop with that witness") {
  Model m = load_model("foraging.mdl");
  Extraction e = extract_property("G (resting -> F[1,4]? resting)");

  CegiwResult r = run_cegiw(m, e.context, e.target, 8, 16, 8);
  CHECK(r.status == CegiwStatus::NoWeakening);
  CHECK_FALSE(r.final_interval.has_value());
  REQUIRE(r.witness.has_value());
  CHECK(trace_key(*r.witness) == "{resting} {leavingHome} {randomWalk} ; {moveToFood} {scanArena}");

  REQUIRE(r.log.size() == 1);
  const IterationRecord& rec = r.log[0];
  CHECK(rec.iteration == 1);
  CHECK(rec.interval_before == Interval::bounded(1, 4));
  CHECK_FALSE(rec.check_holds);
  CHECK(rec.check_bound == 8);
  // The giving-up cycle through homing sorts first and still weakens; the
  // scanArena orbit is the first trace with no fix, and the loop stops there.
  REQUIRE(rec.per_trace_outcomes.size() == 2);
  REQUIRE(rec.counterexamples_used.size() >= 2);
  CHECK(trace_key(rec.counterexamples_used[0]) ==
        " ; {resting} {leavingHome} {randomWalk} {moveToFood} {homing}");
  CHECK(rec.per_trace_outcomes[0] == Interval::bounded(1, 5));
  CHECK(trace_key(rec.counterexamples_used[1]) == trace_key(*r.witness));
  CHECK(rec.per_trace_outcomes[1] == std::nullopt);
  CHECK_FALSE(rec.interval_after.has_value());

  CHECK(iteration_log_csv(r.log) == "iteration,lo,hi\n1,1,none\n");
}

TEST_CASE("the recharging model widens the return window to the longest trip") {
  Model m = load_model("foraging_battery.mdl");
  Extraction e = extract_property("G (resting -> F[1,4]? resting)");

  CegiwResult r = run_cegiw(m, e.context, e.target, 24, 16, 8);
  CHECK(r.status == CegiwStatus::Weakened);
  REQUIRE(r.final_interval.has_value());
  CHECK(*r.final_interval == Interval::bounded(1, 20));
  CHECK_FALSE(r.witness.has_value());

  REQUIRE(r.log.size() == 2);
  const IterationRecord& first = r.log[0];
  CHECK(first.interval_before == Interval::bounded(1, 4));
  CHECK_FALSE(first.check_holds);
  // The two shortest counterexamples are the aborted and the completed trip.
  REQUIRE(first.counterexamples_used.size() >= 2);
  CHECK(first.counterexamples_used[0].total_length() == 19);
  CHECK(first.counterexamples_used[1].total_length() == 20);
  REQUIRE(first.per_trace_outcomes.size() == first.counterexamples_used.size());
  CHECK(first.per_trace_outcomes[0] == Interval::bounded(1, 19));
  CHECK(first.per_trace_outcomes[1] == Interval::bounded(1, 20));
  for (const WeakenOutcome& o : first.per_trace_outcomes) {
    REQUIRE(o.has_value());
    CHECK(is_weaker_or_equal(ModificationKind::Extension, Interval::bounded(1, 20), *o));
  }
  CHECK(first.interval_after == Interval::bounded(1, 20));

  const IterationRecord& second = r.log[1];
  CHECK(second.iteration == 2);
  CHECK(second.interval_before == Interval::bounded(1, 20));
  CHECK(second.check_holds);
  CHECK(second.counterexamples_used.empty());
  CHECK(second.per_trace_outcomes.empty());
  CHECK(second.interval_after == Interval::bounded(1, 20));

  CHECK(iteration_log_csv(r.log) == "iteration,lo,hi\n1,1,20\n2,1,20\n");
}

TEST_CASE("the departure window contracts to just under the shortest trip") {
  Model m = load_model("foraging_battery.mdl");
  Extraction e = extract_property("G (resting & F[1,1] !resting -> G[1,8]? !resting)");

  CegiwResult r = run_cegiw(m, e.context, e.target, 24, 16, 8);
  CHECK(r.status == CegiwStatus::Weakened);
  REQUIRE(r.final_interval.has_value());
  CHECK(*r.final_interval == Interval::bounded(1, 3));
  REQUIRE(r.log.size() == 2);
  CHECK(r.log[0].interval_after == Interval::bounded(1, 3));
  CHECK(r.log[1].check_holds);
}

TEST_CASE("a custom backend is consulted once per adopted interval") {
  Model m = load_model("foraging_battery.mdl");
  Extraction e = extract_property("G (resting -> F[1,4]? resting)");

  std::vector<std::string> checked;
  CheckFn counting = [&](const Model& model, const Formula& phi, std::uint64_t b, std::size_t k) {
    checked.push_back(phi.str());
    return check_bounded(model, phi, b, k);
  };

  CegiwResult r = run_cegiw(m, e.context, e.target, 24, 16, 8, counting);
  CHECK(r.status == CegiwStatus::Weakened);
  REQUIRE(checked.size() == 2);
  CHECK(checked[0] == "G (resting -> F[1,4] resting)");
  CHECK(checked[1] == "G (resting -> F[1,20] resting)");
}

TEST_CASE("scripted verdicts drive the loop without any real search") {
  Model m = parse_model(
      "VAR\n  v : {a, b};\nINIT\n  v = a;\nTRANS\n  v = a : next(v) = b;\n"
      "  v = b : next(v) = a;\nDEFINE\n  pa := v = a;\n  pb := v = b;\n");
  Extraction e = extract_property("G (pa -> F[1,1]? pa)");
  LassoTrace alternator({}, {st({"pa"}), st({"pb"})});

  int calls = 0;
  CheckFn scripted = [&](const Model&, const Formula&, std::uint64_t b, std::size_t) {
    ++calls;
    CheckVerdict v;
    v.bound = b;
    if (calls == 1) {
      v.holds = false;
      v.counterexamples.push_back(alternator);
    } else {
      v.holds = true;
    }
    return v;
  };

  CegiwResult r = run_cegiw(m, e.context, e.target, 8, 16, 8, scripted);
  CHECK(calls == 2);
  CHECK(r.status == CegiwStatus::Weakened);
  CHECK(*r.final_interval == Interval::bounded(1, 2));
}

TEST_CASE("a backend returning a satisfied trace is rejected loudly") {
  Model m = load_model("foraging.mdl");
  Extraction e = extract_property("G (resting -> F[1,4]? resting)");
  LassoTrace four_cycle(
      {}, {st({"resting"}), st({"leavingHome"}), st({"randomWalk"}), st({"homing"})});

  CheckFn lying = [&](const Model&, const Formula&, std::uint64_t b, std::size_t) {
    CheckVerdict v;
    v.bound = b;
    v.holds = false;
    v.counterexamples.push_back(four_cycle);
    return v;
  };

  CHECK_THROWS_AS(run_cegiw(m, e.context, e.target, 8, 16, 8, lying), std::logic_error);
}

TEST_CASE("the iteration limit surfaces as an exhausted run") {
  Model m = load_model("foraging_battery.mdl");
  Extraction e = extract_property("G (resting -> F[1,4]? resting)");

  CegiwResult r = run_cegiw(m, e.context, e.target, 24, 1, 8);
  CHECK(r.status == CegiwStatus::Exhausted);
  CHECK_FALSE(r.final_interval.has_value());
  CHECK_FALSE(r.witness.has_value());
  REQUIRE(r.log.size() == 1);
  CHECK(r.log[0].interval_after == Interval::bounded(1, 20));

  CegiwResult none = run_cegiw(m, e.context, e.target, 24, 0, 8);
  CHECK(none.status == CegiwStatus::Exhausted);
  CHECK(none.log.empty());
}

TEST_CASE("iteration logs serialize to stable JSON lines and CSV rows") {
  IterationRecord first;
  first.iteration = 1;
  first.interval_before = Interval::bounded(1, 4);
  first.counterexamples_used = {LassoTrace({}, {st({"p"})})};
  first.per_trace_outcomes = {Interval::bounded(1, 6), std::nullopt};
  first.interval_after = std::nullopt;
  first.check_holds = false;
  first.check_bound = 8;
  first.wall_time_ms = 0.0;

  IterationRecord second;
  second.iteration = 2;
  second.interval_before = Interval::bounded(2, 5);
  second.interval_after = Interval::unbounded(2);
  second.check_holds = true;
  second.check_bound = 8;
  second.wall_time_ms = 0.0;

  std::vector<IterationRecord> log = {first, second};
  CHECK(iteration_log_json(log) ==
        "{\"check_bound\":8,\"check_holds\":false,"
        "\"counterexamples\":[{\"prefix\":[],\"suffix\":[[\"p\"]]}],"
        "\"interval_after\":null,\"interval_before\":{\"hi\":4,\"lo\":1},\"iteration\":1,"
        "\"outcomes\":[{\"hi\":6,\"lo\":1},null],\"wall_time_ms\":0.0}\n"
        "{\"check_bound\":8,\"check_holds\":true,\"counterexamples\":[],"
        "\"interval_after\":{\"hi\":null,\"lo\":2},\"interval_before\":{\"hi\":5,\"lo\":2},"
        "\"iteration\":2,\"outcomes\":[],\"wall_time_ms\":0.0}\n");
  CHECK(iteration_log_csv(log) == "iteration,lo,hi\n1,1,none\n2,2,inf\n");
}

TEST_CASE("the loop lands on the strongest interval passing every bounded trace") {
  Rng rng(55001);
  int compared = 0;
  for (int i = 0; i < 60; ++i) {
    Model m = random_model(rng);
    std::vector<std::string> atoms;
    for (const Define& d : m.defines) atoms.push_back(d.name);
    TemporalNode target = random_target(rng, atoms, 4);
    Context c = random_context(rng, atoms, 2, 4);

    CegiwResult r = run_cegiw(m, c, target, 6, 64, 4);
    REQUIRE(r.status != CegiwStatus::Exhausted);

    TimePoint cap = 2 * 6 + target.interval.lo() +
                    (target.interval.is_bounded() ? *target.interval.hi() : 0) + 4;
    std::optional<Interval> oracle = exhaustive_model_weaken(m, c, target, 6, cap);

    std::string formula_text = substitute(c, target.to_formula()).str();
    CAPTURE(formula_text);
    if (r.status == CegiwStatus::Weakened) {
      REQUIRE(oracle.has_value());
      CHECK(*r.final_interval == *oracle);
    } else {
      CHECK_FALSE(oracle.has_value());
      CHECK(r.witness.has_value());
    }

    ModificationKind mk = modification_kind(target.kind);
    for (const IterationRecord& rec : r.log) {
      if (rec.interval_after) {
        CHECK(is_modification(mk, rec.interval_before, *rec.interval_after));
      }
    }
    ++compared;
  }
  CHECK(compared == 60);
}
