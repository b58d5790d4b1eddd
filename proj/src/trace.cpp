#include "cegiw/trace.hpp"

#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace cegiw {

namespace {

// Smallest p such that suffix = w^k with |w| = p. p must divide the length.
std::size_t primitive_period(const std::vector<State>& suffix) {
  const std::size_t n = suffix.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = suffix[i] == suffix[i % p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

LassoTrace::LassoTrace(std::vector<State> prefix, std::vector<State> suffix)
    : prefix_(std::move(prefix)), suffix_(std::move(suffix)) {
  if (suffix_.empty()) throw std::invalid_argument("lasso trace requires a nonempty suffix");

  const std::size_t p = primitive_period(suffix_);
  suffix_.resize(p);

  // While the prefix tail equals the suffix tail, the trace
  // pre . x (s1..sk)^omega with x == sk equals pre . (x s1..sk-1)^omega.
  while (!prefix_.empty() && prefix_.back() == suffix_.back()) {
    suffix_.pop_back();
    suffix_.insert(suffix_.begin(), prefix_.back());
    prefix_.pop_back();
  }
}

const State& LassoTrace::state_at(TimePoint t) const {
  if (t < prefix_.size()) return prefix_[t];
  return suffix_[(t - prefix_.size()) % suffix_.size()];
}

LassoTrace canonicalize(std::vector<State> prefix, std::vector<State> suffix) {
  return LassoTrace(std::move(prefix), std::move(suffix));
}

TimePoint end_index(const LassoTrace& pi, TimePoint a) {
  if (a < pi.prefix().size()) return pi.total_length();
  return a + pi.suffix().size() - 1;
}

CoverInterval covering(const LassoTrace& pi, const Interval& i) {
  return CoverInterval{i.lo(), i.hi_capped(end_index(pi, i.lo()))};
}

namespace {

void render_states(std::string& out, const std::vector<State>& states) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += " ";
    out += "{";
    bool first = true;
    for (const auto& a : states[i]) {
      if (!first) out += ",";
      out += a;
      first = false;
    }
    out += "}";
  }
}

}  // namespace

std::string trace_key(const LassoTrace& pi) {
  std::string out;
  render_states(out, pi.prefix());
  out += " ; ";
  render_states(out, pi.suffix());
  return out;
}

std::string trace_to_json(const LassoTrace& pi) {
  nlohmann::json j;
  auto states = [](const std::vector<State>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : v) arr.push_back(std::vector<std::string>(s.begin(), s.end()));
    return arr;
  };
  j["prefix"] = states(pi.prefix());
  j["suffix"] = states(pi.suffix());
  return j.dump();
}

LassoTrace trace_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed trace JSON: ") + e.what());
  }
  auto states = [](const nlohmann::json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("trace JSON: prefix/suffix must be arrays");
    std::vector<State> out;
    for (const auto& st : arr) {
      if (!st.is_array()) throw std::invalid_argument("trace JSON: each state must be an array of atoms");
      State s;
      for (const auto& a : st) {
        if (!a.is_string()) throw std::invalid_argument("trace JSON: atoms must be strings");
        s.insert(a.get<std::string>());
      }
      out.push_back(std::move(s));
    }
    return out;
  };
  if (!j.contains("prefix") || !j.contains("suffix")) {
    throw std::invalid_argument("trace JSON: missing prefix or suffix");
  }
  return LassoTrace(states(j["prefix"]), states(j["suffix"]));
}

}  // namespace cegiw
