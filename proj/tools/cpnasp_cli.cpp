// Command-line front end. Talks to the engine exclusively through the C API.
#include "cpnasp/cpnasp.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct NetDeleter {
  void operator()(cpn_net *n) const { cpn_net_free(n); }
};
struct ConstraintsDeleter {
  void operator()(cpn_constraints *c) const { cpn_constraints_free(c); }
};
struct TrajDeleter {
  void operator()(cpn_trajectories *t) const { cpn_trajectories_free(t); }
};
struct StringDeleter {
  void operator()(char *s) const { cpn_string_free(s); }
};
using NetPtr = std::unique_ptr<cpn_net, NetDeleter>;
using ConstraintsPtr = std::unique_ptr<cpn_constraints, ConstraintsDeleter>;
using TrajPtr = std::unique_ptr<cpn_trajectories, TrajDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

struct Failure {
  int code;
};

[[noreturn]] void die(int code, const std::string &msg) {
  std::cerr << "cpnasp: " << msg;
  if (msg.empty() || msg.back() != '\n')
    std::cerr << '\n';
  throw Failure{code};
}

void check(cpn_status st, const std::string &context) {
  if (st != CPN_OK)
    die(st, context + ": " + cpn_last_error());
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    die(CPN_ERR_INPUT, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    die(CPN_ERR_INPUT, "cannot write '" + path + "'");
  out << text;
}

struct RunConfig {
  std::string net_path;
  std::string constraints_path;
  std::size_t steps = 5;
  std::string semantics = "max";
  bool nonreentrant = false;
  bool forbid_stutter = false;
  std::string limit = "1";
  bool count_only = false;
  std::string format = "atoms";
  std::uint64_t ntok = 30;
  std::string dialect = "legacy";
  std::string out;
  std::string answers;
  std::string place, color;
  std::optional<std::size_t> traj;
  bool all = false;
};

NetPtr load_net(const std::string &path) {
  std::string text = read_file(path);
  cpn_net *raw = nullptr;
  if (cpn_net_parse(text.data(), text.size(), &raw) != CPN_OK)
    die(CPN_ERR_INPUT, path + ":\n" + cpn_last_error());
  NetPtr net(raw);
  std::string warnings = cpn_net_warnings(net.get());
  if (!warnings.empty())
    std::cerr << path << ":\n" << warnings;
  return net;
}

ConstraintsPtr load_constraints(const cpn_net *net, const RunConfig &cfg) {
  if (cfg.constraints_path.empty())
    return nullptr;
  std::string text = read_file(cfg.constraints_path);
  cpn_constraints *raw = nullptr;
  if (cpn_constraints_parse(net, text.data(), text.size(), cfg.steps, &raw) != CPN_OK)
    die(CPN_ERR_INPUT, cfg.constraints_path + ":\n" + cpn_last_error());
  return ConstraintsPtr(raw);
}

cpn_mode make_mode(const cpn_net *net, const RunConfig &cfg) {
  cpn_mode m = cpn_mode_default();
  if (cfg.semantics == "set")
    m.firing = CPN_FIRING_SET;
  else if (cfg.semantics == "interleaved")
    m.firing = CPN_FIRING_INTERLEAVED;
  else
    m.firing = CPN_FIRING_MAXIMAL;
  m.reentrant = !cfg.nonreentrant;
  m.priorities = cpn_net_has_priorities(net);
  m.forbid_stutter = cfg.forbid_stutter;
  return m;
}

std::size_t parse_limit(const std::string &s) {
  if (s == "all")
    return 0;
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos == s.size() && v >= 1)
      return static_cast<std::size_t>(v);
  } catch (const std::exception &) {
  }
  die(CPN_ERR_INPUT, "--limit expects a positive integer or 'all'");
}

TrajPtr run_enumeration(const cpn_net *net, const cpn_constraints *cs, const RunConfig &cfg,
                        std::size_t limit) {
  cpn_mode mode = make_mode(net, cfg);
  cpn_trajectories *raw = nullptr;
  check(cpn_enumerate(net, cs, cfg.steps, &mode, limit, &raw), "enumerate");
  return TrajPtr(raw);
}

int cmd_simulate(const RunConfig &cfg) {
  auto net = load_net(cfg.net_path);
  auto cs = load_constraints(net.get(), cfg);
  cpn_mode mode = make_mode(net.get(), cfg);
  if (cfg.count_only) {
    std::uint64_t n = 0;
    check(cpn_count(net.get(), cs.get(), cfg.steps, &mode, &n), "count");
    std::cout << n << '\n';
    return 0;
  }
  auto ts = run_enumeration(net.get(), cs.get(), cfg, parse_limit(cfg.limit));
  int format = cfg.format == "json" ? CPN_FORMAT_JSON : CPN_FORMAT_ATOMS;
  for (std::size_t i = 0; i < cpn_trajectories_size(ts.get()); ++i) {
    char *raw = nullptr;
    check(cpn_trajectory_render(ts.get(), i, format, &raw), "render");
    std::cout << CString(raw).get();
  }
  if (format == CPN_FORMAT_ATOMS)
    std::cout << (cpn_trajectories_size(ts.get()) ? "SATISFIABLE\n" : "UNSATISFIABLE\n");
  return 0;
}

int cmd_emit(const RunConfig &cfg) {
  auto net = load_net(cfg.net_path);
  cpn_mode mode = make_mode(net.get(), cfg);
  if (cfg.nonreentrant && !cpn_net_has_durations(net.get()))
    std::cerr << "cpnasp: warning: --nonreentrant has no effect without transitions of "
                 "duration > 1\n";
  std::uint64_t reach = 0;
  check(cpn_max_reachable_count(net.get(), cfg.steps, &mode, &reach), "reachability");
  if (reach > cfg.ntok)
    std::cerr << "cpnasp: warning: token counts reach " << reach << " but --ntok is " << cfg.ntok
              << "; the program will miss answer sets\n";
  int dialect = cfg.dialect == "clingo5" ? CPN_DIALECT_CLINGO5 : CPN_DIALECT_LEGACY;
  char *raw = nullptr;
  check(cpn_emit_asp(net.get(), cfg.steps, cfg.ntok, &mode, dialect, &raw), "emit");
  write_output(cfg.out, CString(raw).get());
  return 0;
}

int cmd_compare(const RunConfig &cfg) {
  auto net = load_net(cfg.net_path);
  auto cs = load_constraints(net.get(), cfg);
  std::string answers = read_file(cfg.answers);
  auto ts = run_enumeration(net.get(), cs.get(), cfg, 0);
  char *raw = nullptr;
  cpn_status st = cpn_compare_answer_sets(ts.get(), answers.data(), answers.size(), &raw);
  if (st == CPN_ERR_INPUT)
    die(st, cfg.answers + ": " + cpn_last_error());
  if (st != CPN_OK && st != CPN_ERR_MISMATCH)
    die(st, cpn_last_error());
  std::cout << CString(raw).get();
  return st;
}

int cmd_trace(const RunConfig &cfg) {
  auto net = load_net(cfg.net_path);
  if (!cpn_net_has_place(net.get(), cfg.place.c_str()))
    die(CPN_ERR_INPUT, "unknown place '" + cfg.place + "'");
  if (!cpn_net_has_color(net.get(), cfg.color.c_str()))
    die(CPN_ERR_INPUT, "unknown color '" + cfg.color + "'");
  auto cs = load_constraints(net.get(), cfg);
  auto ts = run_enumeration(net.get(), cs.get(), cfg, cfg.traj && !cfg.all ? *cfg.traj + 1 : 0);
  const std::size_t n = cpn_trajectories_size(ts.get());

  auto csv = [&](std::size_t i) {
    char *raw = nullptr;
    check(cpn_trace_csv(ts.get(), i, cfg.place.c_str(), cfg.color.c_str(), &raw), "trace");
    return std::string(CString(raw).get());
  };

  if (cfg.traj && !cfg.all) {
    if (*cfg.traj >= n)
      die(CPN_ERR_INPUT, "trajectory " + std::to_string(*cfg.traj) + " does not exist (" +
                             std::to_string(n) + " available)");
    write_output(cfg.out, csv(*cfg.traj));
    return 0;
  }

  std::string prefix = cfg.out;
  if (prefix.empty() || prefix == "-") {
    prefix = cfg.net_path;
    if (auto slash = prefix.find_last_of('/'); slash != std::string::npos)
      prefix = prefix.substr(slash + 1);
    if (auto dot = prefix.rfind('.'); dot != std::string::npos)
      prefix = prefix.substr(0, dot);
  }
  std::optional<long long> lo, hi;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text = csv(i);
    std::string path = prefix + "." + std::to_string(i) + ".csv";
    write_output(path, text);
    // Last field of the last row is the count at the horizon.
    auto end = text.find_last_not_of('\n');
    auto comma = text.rfind(',', end);
    long long last = std::stoll(text.substr(comma + 1, end - comma));
    lo = lo ? std::min(*lo, last) : last;
    hi = hi ? std::max(*hi, last) : last;
    std::cout << path << '\n';
  }
  std::cout << "trajectories: " << n << '\n';
  if (n)
    std::cout << cfg.place << '.' << cfg.color << " at step " << cfg.steps << ": min " << *lo
              << ", max " << *hi << '\n';
  return 0;
}

int cmd_efficiency(const RunConfig &cfg) {
  auto net = load_net(cfg.net_path);
  cpn_mode mode = make_mode(net.get(), cfg);
  char *raw = nullptr;
  check(cpn_efficiency_sweep(net.get(), cfg.steps, &mode, cfg.place.c_str(), cfg.color.c_str(),
                             &raw),
        "efficiency");
  write_output(cfg.out, CString(raw).get());
  return 0;
}

int cmd_validate(const RunConfig &cfg) {
  auto net = load_net(cfg.net_path);
  if (!cfg.out.empty()) {
    char *raw = nullptr;
    check(cpn_net_render(net.get(), &raw), "render");
    write_output(cfg.out, CString(raw).get());
  } else {
    std::cout << "ok\n";
  }
  return 0;
}

void add_net_options(CLI::App *cmd, RunConfig &cfg, bool with_constraints = true) {
  cmd->add_option("net", cfg.net_path, "Net description (.cpn)")->required();
  cmd->add_option("--steps,-k", cfg.steps, "Simulation horizon k (time steps 0..k)")
      ->capture_default_str();
  cmd->add_option("--semantics", cfg.semantics, "Firing semantics")
      ->check(CLI::IsMember({"set", "max", "interleaved"}))
      ->capture_default_str();
  cmd->add_flag("--nonreentrant", cfg.nonreentrant,
                "Timed transitions cannot re-fire while in progress");
  cmd->add_flag("--forbid-stutter", cfg.forbid_stutter,
                "Disallow the empty firing set while any transition is enabled");
  if (with_constraints)
    cmd->add_option("--constraints", cfg.constraints_path, "Way-point constraints (.cns)");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Colored Petri net simulator and ASP encoder"};
  app.set_version_flag("--version", std::string(cpn_version()));
  app.require_subcommand(1);
  RunConfig cfg;

  auto *sim = app.add_subcommand("simulate", "Enumerate execution sequences");
  add_net_options(sim, cfg);
  sim->add_option("--limit", cfg.limit, "Number of trajectories to print, or 'all'")
      ->capture_default_str();
  sim->add_flag("--count-only", cfg.count_only, "Print only the number of trajectories");
  sim->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"atoms", "json"}))
      ->capture_default_str();

  auto *emit = app.add_subcommand("emit-asp", "Emit the ASP encoding");
  add_net_options(emit, cfg, false);
  emit->add_option("--ntok", cfg.ntok, "Upper bound of the num/1 token domain")
      ->capture_default_str();
  emit->add_option("--dialect", cfg.dialect, "Aggregate syntax")
      ->check(CLI::IsMember({"legacy", "clingo5"}))
      ->capture_default_str();
  emit->add_option("--out,-o", cfg.out, "Output file (default: standard output)");

  auto *cmp = app.add_subcommand("compare-asp", "Compare solver answer sets with the enumeration");
  add_net_options(cmp, cfg);
  cmp->add_option("--answers", cfg.answers, "Solver output file")->required();

  auto *trace = app.add_subcommand("trace", "Export a place/color time series as CSV");
  add_net_options(trace, cfg);
  trace->add_option("--place", cfg.place, "Place")->required();
  trace->add_option("--color", cfg.color, "Color")->required();
  auto *traj_opt = trace->add_option("--traj", cfg.traj, "Trajectory index");
  trace->add_flag("--all", cfg.all, "One file per trajectory (PREFIX.N.csv)")->excludes(traj_opt);
  trace->add_option("--out,-o", cfg.out, "Output file, or file prefix with --all");

  auto *eff = app.add_subcommand("efficiency", "Min/max of count/ts over all reachable states");
  add_net_options(eff, cfg, false);
  eff->add_option("--place", cfg.place, "Place")->required();
  eff->add_option("--color", cfg.color, "Color")->required();
  eff->add_option("--out,-o", cfg.out, "Output file (default: standard output)");

  auto *val = app.add_subcommand("validate", "Parse and validate a net");
  val->add_option("net", cfg.net_path, "Net description (.cpn)")->required();
  val->add_option("--render", cfg.out, "Write the normalized net to this file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : CPN_ERR_INPUT;
  }

  try {
    if (*sim)
      return cmd_simulate(cfg);
    if (*emit)
      return cmd_emit(cfg);
    if (*cmp)
      return cmd_compare(cfg);
    if (*trace)
      return cmd_trace(cfg);
    if (*eff)
      return cmd_efficiency(cfg);
    if (*val)
      return cmd_validate(cfg);
  } catch (const Failure &f) {
    return f.code;
  } catch (const std::exception &e) {
    std::cerr << "cpnasp: " << e.what() << '\n';
    return CPN_ERR_INTERNAL;
  }
  return CPN_ERR_INTERNAL;
}
