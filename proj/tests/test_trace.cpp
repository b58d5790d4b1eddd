#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "cegiw/trace.hpp"
#include "generators.hpp"

using namespace cegiw;
using namespace cegiw::testing;

namespace {
State st(std::initializer_list<const char*> atoms) {
  State s;
  for (const char* a : atoms) s.insert(a);
  return s;
}
}  // namespace

TEST_CASE("construction canonicalizes: prefix tail rotates into the loop") {
  LassoTrace pi({st({"a"}), st({"b"})}, {st({"c"}), st({"b"})});
  CHECK(pi.prefix() == std::vector<State>{st({"a"})});
  CHECK(pi.suffix() == std::vector<State>{st({"b"}), st({"c"})});
  CHECK(pi.total_length() == 3);
}

TEST_CASE("construction canonicalizes: suffix becomes primitive") {
  LassoTrace pi({st({"p"})}, {st({"q"}), st({"q"})});
  CHECK(pi.suffix() == std::vector<State>{st({"q"})});

  LassoTrace two({}, {st({"x"}), st({"y"}), st({"x"}), st({"y"})});
  CHECK(two.suffix() == (std::vector<State>{st({"x"}), st({"y"})}));

  LassoTrace absorb({st({"q"})}, {st({"q"})});
  CHECK(absorb.prefix().empty());
  CHECK(absorb.suffix() == std::vector<State>{st({"q"})});
}

TEST_CASE("state_at walks the prefix then loops") {
  LassoTrace pi({st({"p0"}), st({"p1"})}, {st({"s0"}), st({"s1"}), st({"s2"})});
  CHECK(pi.state_at(0) == st({"p0"}));
  CHECK(pi.state_at(1) == st({"p1"}));
  CHECK(pi.state_at(2) == st({"s0"}));
  CHECK(pi.state_at(4) == st({"s2"}));
  CHECK(pi.state_at(5) == st({"s0"}));
  CHECK(pi.state_at(8) == st({"s0"}));
  CHECK(pi.state_at(100) == st({"s2"}));
}

TEST_CASE("end_index and covering bound every scan") {
  LassoTrace pi({st({"p0"}), st({"p1"})}, {st({"s0"}), st({"s1"}), st({"s2"})});
  CHECK(end_index(pi, 0) == 5);
  CHECK(end_index(pi, 1) == 5);
  CHECK(end_index(pi, 2) == 4);
  CHECK(end_index(pi, 7) == 9);
  CHECK(covering(pi, Interval::bounded(1, 10)) == CoverInterval{1, 5});
  CHECK(covering(pi, Interval::unbounded(3)) == CoverInterval{3, 5});
  CHECK(covering(pi, Interval::bounded(0, 1)) == CoverInterval{0, 1});
  CHECK(covering(pi, Interval::unbounded(6)) == CoverInterval{6, 8});
}

TEST_CASE("canonicalization is idempotent and preserves the word") {
  Rng rng(411);
  for (int i = 0; i < 600; ++i) {
    std::size_t prefix_len = rng.below(5);
    std::size_t suffix_len = rng.range(1, 4);
    std::vector<State> prefix;
    std::vector<State> suffix;
    for (std::size_t k = 0; k < prefix_len; ++k)
      prefix.push_back(random_state(rng, small_atoms()));
    for (std::size_t k = 0; k < suffix_len; ++k)
      suffix.push_back(random_state(rng, small_atoms()));

    LassoTrace canon(prefix, suffix);
    CHECK(canon.total_length() <= prefix.size() + suffix.size());
    // Same infinite word, observed well past both representations.
    auto raw_at = [&](TimePoint t) -> const State& {
      if (t < prefix.size()) return prefix[t];
      return suffix[(t - prefix.size()) % suffix.size()];
    };
    bool same = true;
    for (TimePoint t = 0; t < 2 * (prefix_len + suffix_len) + 4 && same; ++t) {
      same = raw_at(t) == canon.state_at(t);
    }
    CHECK(same);

    LassoTrace again(canon.prefix(), canon.suffix());
    CHECK(again == canon);
    // Canonical shape: primitive suffix, no absorbable prefix tail.
    if (!canon.prefix().empty()) CHECK(canon.prefix().back() != canon.suffix().back());
  }
}

TEST_CASE("trace keys render prefix ; suffix") {
  LassoTrace pi({st({"a", "b"}), st({"c"})}, {st({"d"})});
  CHECK(trace_key(pi) == "{a,b} {c} ; {d}");
  LassoTrace loop_only({}, {st({"d"})});
  CHECK(trace_key(loop_only) == " ; {d}");
  LassoTrace empty_state({}, {st({})});
  CHECK(trace_key(empty_state) == " ; {}");
}

TEST_CASE("trace JSON round trip") {
  LassoTrace pi({st({"a", "b"}), st({"c"})}, {st({"d"})});
  CHECK(trace_to_json(pi) == R"({"prefix":[["a","b"],["c"]],"suffix":[["d"]]})");
  CHECK(trace_from_json(trace_to_json(pi)) == pi);

  Rng rng(412);
  for (int i = 0; i < 200; ++i) {
    LassoTrace t = random_trace(rng, small_atoms(), 4, 4);
    CHECK(trace_from_json(trace_to_json(t)) == t);
  }
}

TEST_CASE("malformed trace JSON is rejected") {
  CHECK_THROWS_AS(trace_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(trace_from_json(R"({"prefix":[]})"), std::invalid_argument);
  CHECK_THROWS_AS(trace_from_json(R"({"prefix":[], "suffix":[[3]]})"), std::invalid_argument);
  CHECK_THROWS_AS(trace_from_json(R"({"prefix":"x", "suffix":[]})"), std::invalid_argument);
}

TEST_CASE("empty suffix is rejected") {
  CHECK_THROWS_AS(LassoTrace({st({"a"})}, {}), std::invalid_argument);
}
