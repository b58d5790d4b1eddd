#include "cegiw/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <vector>

#include "cegiw/rewrite.hpp"

namespace cegiw {

namespace {

bool is_x_step(const Formula& f) {
  if (f.kind() != FormulaKind::Until || !f.lhs().is_true()) return false;
  const Interval& i = f.interval();
  return i.is_bounded() && i.lo() == 1 && i.hi() == 1;
}

bool is_unbounded_from_zero(const Interval& i) { return !i.is_bounded() && i.lo() == 0; }

std::string ltl_str_impl(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f.atom_name();
    case FormulaKind::True:
      return "TRUE";
    case FormulaKind::Not: {
      if (f.is_false()) return "FALSE";
      Formula c = f.child();
      if (c.kind() == FormulaKind::Atom) return "!" + c.atom_name();
      return "!(" + ltl_str_impl(c) + ")";
    }
    case FormulaKind::And:
      return "(" + ltl_str_impl(f.lhs()) + " & " + ltl_str_impl(f.rhs()) + ")";
    case FormulaKind::Or:
      return "(" + ltl_str_impl(f.lhs()) + " | " + ltl_str_impl(f.rhs()) + ")";
    case FormulaKind::Until: {
      if (is_x_step(f)) return "X (" + ltl_str_impl(f.rhs()) + ")";
      if (!is_unbounded_from_zero(f.interval())) break;
      if (f.lhs().is_true()) return "F (" + ltl_str_impl(f.rhs()) + ")";
      return "(" + ltl_str_impl(f.lhs()) + " U " + ltl_str_impl(f.rhs()) + ")";
    }
    case FormulaKind::Release: {
      if (!is_unbounded_from_zero(f.interval())) break;
      std::string r = ltl_str_impl(f.rhs());
      if (f.lhs().is_false()) return "G (" + r + ")";
      std::string l = ltl_str_impl(f.lhs());
      return "((" + r + " U (" + r + " & " + l + ")) | G (" + r + "))";
    }
  }
  throw std::invalid_argument("formula is not in LTL form");
}

}  // namespace

std::string ltl_str(const Formula& f) { return ltl_str_impl(f); }

ExternalProblem emit_external_problem(const Model& m, const Formula& phi) {
  ExternalProblem p;
  p.model_text = emit_model(m);
  p.spec_text = "LTLSPEC " + ltl_str(to_ltl(phi)) + "\n";
  return p;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_state_header(const std::string& line) {
  return line.rfind("-> State:", 0) == 0 && line.find("<-") != std::string::npos;
}

}  // namespace

LassoTrace parse_external_counterexample(const Model& m, const std::string& text) {
  // Index-per-variable valuations; nullopt marks a slot the trace has not
  // assigned yet.
  using PartialValuation = std::vector<std::optional<std::uint32_t>>;
  std::vector<PartialValuation> states;
  std::optional<std::size_t> loop_start;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line == "-- Loop starts here") {
      loop_start = states.size();
      continue;
    }
    if (is_state_header(line)) {
      if (states.empty()) {
        states.emplace_back(m.variables.size(), std::nullopt);
      } else {
        states.push_back(states.back());
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (line.empty() || line.rfind("--", 0) == 0 || eq == std::string::npos) continue;
    if (states.empty()) continue;  // preamble noise
    std::string name = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto var = m.variable_index(name);
    if (!var) throw ExternalCheckerError("unknown variable '" + name + "' in counterexample");
    const std::vector<std::string>& domain = m.variables[*var].values;
    auto it = std::find(domain.begin(), domain.end(), value);
    if (it == domain.end()) {
      throw ExternalCheckerError("'" + value + "' is not a value of '" + name + "'");
    }
    states.back()[*var] = static_cast<std::uint32_t>(it - domain.begin());
  }

  if (states.empty()) throw ExternalCheckerError("counterexample lists no states");
  if (!loop_start) throw ExternalCheckerError("counterexample has no loop marker");
  if (*loop_start >= states.size()) {
    throw ExternalCheckerError("loop marker is not followed by a state");
  }
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    if (!states.front()[i]) {
      throw ExternalCheckerError("first state leaves '" + m.variables[i].name + "' unassigned");
    }
  }

  std::vector<Valuation> full;
  full.reserve(states.size());
  for (const PartialValuation& pv : states) {
    Valuation v(pv.size());
    for (std::size_t i = 0; i < pv.size(); ++i) v[i] = *pv[i];
    full.push_back(std::move(v));
  }
  // Checkers often close the trace by reprinting the loop-start state.
  if (full.size() > *loop_start + 1 && full.back() == full[*loop_start]) full.pop_back();

  std::vector<State> prefix;
  std::vector<State> suffix;
  for (std::size_t i = 0; i < full.size(); ++i) {
    (i < *loop_start ? prefix : suffix).push_back(project(m, full[i]));
  }
  return LassoTrace(std::move(prefix), std::move(suffix));
}

ExternalVerdict parse_external_output(const Model& m, const std::string& text) {
  ExternalVerdict v;
  if (text.find("is true") != std::string::npos) {
    v.holds = true;
    return v;
  }
  if (text.find("is false") == std::string::npos) {
    throw ExternalCheckerError("checker output carries no verdict");
  }
  v.holds = false;
  v.counterexample = parse_external_counterexample(m, text);
  return v;
}

namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    char name[] = "/tmp/cegiw-problem-XXXXXX";
    int fd = mkstemp(name);
    if (fd < 0) throw ExternalCheckerError("cannot create problem file");
    path_ = name;
    std::size_t off = 0;
    while (off < contents.size()) {
      ssize_t n = write(fd, contents.data() + off, contents.size() - off);
      if (n < 0) {
        close(fd);
        throw ExternalCheckerError("cannot write problem file");
      }
      off += static_cast<std::size_t>(n);
    }
    close(fd);
  }

  ~TempFile() { unlink(path_.c_str()); }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

ExternalVerdict run_external_checker(const std::string& command, const Model& m,
                                     const Formula& phi, std::uint64_t bound,
                                     std::chrono::milliseconds timeout) {
  ExternalProblem problem = emit_external_problem(m, phi);
  TempFile file(problem.model_text + "\n" + problem.spec_text);

  int pipe_fds[2];
  if (pipe(pipe_fds) != 0) throw ExternalCheckerError("cannot create pipe");

  pid_t pid = fork();
  if (pid < 0) {
    close(pipe_fds[0]);
    close(pipe_fds[1]);
    throw ExternalCheckerError("cannot fork checker process");
  }
  if (pid == 0) {
    dup2(pipe_fds[1], STDOUT_FILENO);
    dup2(pipe_fds[1], STDERR_FILENO);
    close(pipe_fds[0]);
    close(pipe_fds[1]);
    std::string bound_text = std::to_string(bound);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(command.c_str()));
    argv.push_back(const_cast<char*>("-bmc"));
    argv.push_back(const_cast<char*>("-bmc_length"));
    argv.push_back(const_cast<char*>(bound_text.c_str()));
    argv.push_back(const_cast<char*>(file.path().c_str()));
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    _exit(127);
  }

  close(pipe_fds[1]);
  std::string output;
  auto deadline = std::chrono::steady_clock::now() + timeout;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      timed_out = true;
      break;
    }
    struct pollfd pfd;
    pfd.fd = pipe_fds[0];
    pfd.events = POLLIN;
    int rc = poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) {
      timed_out = true;
      break;
    }
    ssize_t n = read(pipe_fds[0], buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  close(pipe_fds[0]);

  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    throw ExternalCheckerError("external checker timed out after " +
                               std::to_string(timeout.count()) + "ms");
  }

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string tail = output.size() > 400 ? output.substr(output.size() - 400) : output;
    throw ExternalCheckerError("external checker failed: " + tail);
  }
  return parse_external_output(m, output);
}

}  // namespace cegiw
