#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cegiw/driver.hpp"
#include "cegiw/external.hpp"
#include "cegiw/parser.hpp"

namespace {

constexpr int kExitWeakened = 0;
constexpr int kExitNoWeakening = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitUsage = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string render_states(const std::vector<cegiw::State>& states) {
  std::string out;
  for (const cegiw::State& s : states) {
    if (!out.empty()) out += " ";
    out += "{";
    bool first = true;
    for (const std::string& atom : s) {
      if (!first) out += ",";
      out += atom;
      first = false;
    }
    out += "}";
  }
  return out;
}

void collect_atoms(const cegiw::Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case cegiw::FormulaKind::Atom:
      out.insert(f.atom_name());
      return;
    case cegiw::FormulaKind::True:
      return;
    case cegiw::FormulaKind::Not:
      collect_atoms(f.child(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

int run_check(const std::string& model_path, const std::string& prop_arg, std::uint64_t bound,
              std::uint64_t max_iterations, std::size_t max_counterexamples,
              const std::string& backend, std::string external_cmd, const std::string& log_json,
              const std::string& log_csv, bool quiet) {
  cegiw::Model model = cegiw::parse_model(read_file(model_path));

  std::string prop_text = prop_arg;
  if (!prop_text.empty() && prop_text.front() == '@') prop_text = read_file(prop_text.substr(1));
  cegiw::ParsedProperty prop = cegiw::parse_property(prop_text);

  std::set<std::string> atoms;
  collect_atoms(prop.formula, atoms);
  for (const std::string& atom : atoms) {
    if (!model.define_index(atom)) {
      throw std::runtime_error("atom '" + atom + "' is not defined by the model");
    }
  }

  cegiw::Extraction extraction = cegiw::extract(prop.formula, prop.target);
  const cegiw::TemporalNode& target = extraction.target;

  cegiw::CheckFn check;
  if (backend == "external") {
    if (external_cmd.empty()) {
      const char* env = std::getenv("CEGIW_EXTERNAL_CHECKER");
      if (env) external_cmd = env;
    }
    if (external_cmd.empty()) {
      throw std::runtime_error(
          "the external backend needs --external-cmd or CEGIW_EXTERNAL_CHECKER");
    }
    check = [external_cmd](const cegiw::Model& m, const cegiw::Formula& phi, std::uint64_t b,
                           std::size_t) {
      cegiw::ExternalVerdict v = cegiw::run_external_checker(external_cmd, m, phi, b);
      cegiw::CheckVerdict out;
      out.holds = v.holds;
      out.bound = b;
      if (!v.holds) out.counterexamples.push_back(*v.counterexample);
      return out;
    };
  }

  if (!quiet) {
    bool extends = cegiw::modification_kind(target.kind) == cegiw::ModificationKind::Extension;
    std::cerr << "property: " << prop.formula.str() << "\n";
    std::cerr << "target: " << (target.kind == cegiw::TemporalKind::Until ? "U" : "R")
              << target.interval.str() << " (right bound "
              << (extends ? "extends" : "contracts") << ")\n";
    std::cerr << "bound: " << bound << ", backend: " << backend << "\n";
  }

  cegiw::CegiwResult result = cegiw::run_cegiw(model, extraction.context, target, bound,
                                               max_iterations, max_counterexamples, check);

  if (!log_json.empty()) {
    std::ofstream out(log_json);
    out << cegiw::iteration_log_json(result.log);
  }
  if (!log_csv.empty()) {
    std::ofstream out(log_csv);
    out << cegiw::iteration_log_csv(result.log);
  }

  switch (result.status) {
    case cegiw::CegiwStatus::Weakened: {
      cegiw::Formula weakened = cegiw::substitute(
          extraction.context, target.with_interval(*result.final_interval).to_formula());
      if (!quiet) {
        std::cerr << "weakened interval: " << result.final_interval->str() << " after "
                  << result.log.size() << " iteration(s), holds up to bound " << bound << "\n";
      }
      std::cout << weakened.str() << "\n";
      return kExitWeakened;
    }
    case cegiw::CegiwStatus::NoWeakening:
      std::cout << "no weakening exists\n";
      std::cout << "witness prefix: " << render_states(result.witness->prefix()) << "\n";
      std::cout << "witness loop: " << render_states(result.witness->suffix()) << "\n";
      return kExitNoWeakening;
    case cegiw::CegiwStatus::Exhausted:
      std::cout << "iteration limit reached without convergence\n";
      return kExitExhausted;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal right-bound weakening of one marked temporal interval"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run the weakening loop on a model and a property");
  std::string model_path;
  std::string prop_arg;
  std::uint64_t bound = 0;
  std::uint64_t max_iterations = 64;
  std::size_t max_counterexamples = 8;
  std::string backend = "internal";
  std::string external_cmd;
  std::string log_json;
  std::string log_csv;
  bool quiet = false;

  check->add_option("--model", model_path, "model file")->required();
  check->add_option("--prop", prop_arg, "property text, or @file with exactly one '?' marker")
      ->required();
  check->add_option("--bound", bound, "maximum lasso length (prefix plus loop)")->required();
  check->add_option("--max-iterations", max_iterations, "iteration safety limit");
  check->add_option("--max-counterexamples", max_counterexamples,
                    "counterexamples weakened per iteration");
  check->add_option("--backend", backend, "bounded checker to use")
      ->check(CLI::IsMember({"internal", "external"}));
  check->add_option("--external-cmd", external_cmd,
                    "external checker executable (or CEGIW_EXTERNAL_CHECKER)");
  check->add_option("--log-json", log_json, "write the iteration log as JSON lines");
  check->add_option("--log-csv", log_csv, "write the iteration log as iteration,lo,hi rows");
  check->add_flag("--quiet", quiet, "suppress progress notes on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    return run_check(model_path, prop_arg, bound, max_iterations, max_counterexamples, backend,
                     external_cmd, log_json, log_csv, quiet);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
