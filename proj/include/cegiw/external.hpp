#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

#include "cegiw/formula.hpp"
#include "cegiw/model.hpp"

namespace cegiw {

class ExternalCheckerError : public std::runtime_error {
 public:
  explicit ExternalCheckerError(const std::string& message) : std::runtime_error(message) {}
};

struct ExternalProblem {
  std::string model_text;  // parse_model(model_text) == the source model
  std::string spec_text;   // one LTLSPEC line over X/U/G/F and boolean operators
};

// Renders the model and the LTL translation of phi for an external checker.
// Byte-stable for identical inputs. phi must be a plain formula; its bounded
// intervals are expanded by the LTL translation.
ExternalProblem emit_external_problem(const Model& m, const Formula& phi);

// Pure LTL rendering of a translated formula: atoms, TRUE/FALSE, ! & |, X, U,
// F, G. Bounded operators other than the X encoding are rejected.
std::string ltl_str(const Formula& f);

// Reads a checker counterexample: "-> State: k.j <-" blocks listing
// "var = value" lines (unlisted variables keep their previous value), with a
// "-- Loop starts here" marker before the loop-start state. A final state
// repeating the loop start is dropped. The states are projected through the
// model's defines and returned canonical.
LassoTrace parse_external_counterexample(const Model& m, const std::string& text);

struct ExternalVerdict {
  bool holds = false;
  std::optional<LassoTrace> counterexample;
};

// Full checker output: a "is true" / "is false" verdict line, plus the
// counterexample trace when false.
ExternalVerdict parse_external_output(const Model& m, const std::string& text);

// Runs `command -bmc -bmc_length <bound> <problem-file>` and parses its
// output. The problem file holds the emitted model followed by the LTLSPEC
// line. Throws ExternalCheckerError on nonzero exit, unparseable output, or
// timeout.
ExternalVerdict run_external_checker(const std::string& command, const Model& m,
                                     const Formula& phi, std::uint64_t bound,
                                     std::chrono::milliseconds timeout =
                                         std::chrono::milliseconds(60000));

}  // namespace cegiw
