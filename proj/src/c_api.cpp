#include "cpnasp/cpnasp.h"

#include "cpnasp/analysis.hpp"
#include "cpnasp/asp.hpp"
#include "cpnasp/netdsl.hpp"
#include "cpnasp/trajectory_io.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

struct cpn_net {
  std::shared_ptr<const cpn::NetDef> net;
  cpn::Marking initial;
  std::string warnings;
};

struct cpn_constraints {
  std::vector<cpn::Constraint> items;
};

struct cpn_trajectories {
  std::shared_ptr<const cpn::NetDef> net;
  std::size_t horizon = 0;
  std::vector<cpn::Trajectory> items;
};

namespace {

thread_local std::string g_last_error;

cpn_status fail(cpn_status code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

char *dup(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (p)
    std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cpn_status put(char **out, const std::string &s) {
  *out = dup(s);
  return *out ? CPN_OK : fail(CPN_ERR_INTERNAL, "out of memory");
}

cpn::SemanticsMode to_mode(const cpn_mode *m) {
  cpn::SemanticsMode mode;
  if (!m)
    return mode;
  switch (m->firing) {
  case CPN_FIRING_SET: mode.firing = cpn::FiringMode::Set; break;
  case CPN_FIRING_INTERLEAVED: mode.firing = cpn::FiringMode::Interleaved; break;
  default: mode.firing = cpn::FiringMode::Maximal; break;
  }
  mode.reentrant = m->reentrant != 0;
  mode.priorities_active = m->priorities != 0;
  mode.forbid_stutter = m->forbid_stutter != 0;
  return mode;
}

std::string join(const std::vector<cpn::Diagnostic> &ds, cpn::Severity only) {
  std::string out;
  for (const auto &d : ds)
    if (d.severity == only)
      out += d.to_string() + "\n";
  return out;
}

// Maps exceptions from the C++ core to status codes.
template <class F> cpn_status guarded(F &&f) {
  try {
    return f();
  } catch (const std::invalid_argument &e) {
    return fail(CPN_ERR_INPUT, e.what());
  } catch (const std::out_of_range &e) {
    return fail(CPN_ERR_INPUT, e.what());
  } catch (const cpn::AnswerSetError &e) {
    return fail(CPN_ERR_INPUT, std::string(e.code()) + ": " + e.what());
  } catch (const std::exception &e) {
    return fail(CPN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CPN_ERR_INTERNAL, "unknown error");
  }
}

} // namespace

extern "C" {

const char *cpn_version(void) { return "1.0.0"; }
const char *cpn_last_error(void) { return g_last_error.c_str(); }
void cpn_string_free(char *s) { std::free(s); }

cpn_mode cpn_mode_default(void) { return cpn_mode{CPN_FIRING_MAXIMAL, 1, 0, 0}; }

cpn_status cpn_net_parse(const char *text, size_t len, cpn_net **out) {
  if (!text || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto parsed = cpn::parse_net(std::string_view(text, len));
    if (!parsed.ok())
      return fail(CPN_ERR_INPUT, join(parsed.diagnostics, cpn::Severity::Error));
    auto *h = new cpn_net;
    h->net = std::make_shared<const cpn::NetDef>(std::move(*parsed.net));
    h->initial = std::move(parsed.initial);
    h->warnings = join(parsed.diagnostics, cpn::Severity::Warning);
    *out = h;
    return CPN_OK;
  });
}

void cpn_net_free(cpn_net *net) { delete net; }
const char *cpn_net_warnings(const cpn_net *net) { return net ? net->warnings.c_str() : ""; }
int cpn_net_has_priorities(const cpn_net *net) { return net && net->net->any_priority(); }
int cpn_net_has_durations(const cpn_net *net) { return net && net->net->any_timed(); }
int cpn_net_has_place(const cpn_net *net, const char *place) {
  return net && place && net->net->has_place(place);
}
int cpn_net_has_color(const cpn_net *net, const char *color) {
  return net && color && net->net->has_color(color);
}

cpn_status cpn_net_render(const cpn_net *net, char **out) {
  if (!net || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  return guarded([&] { return put(out, cpn::render_net(*net->net, net->initial)); });
}

cpn_status cpn_constraints_parse(const cpn_net *net, const char *text, size_t len, size_t horizon,
                                 cpn_constraints **out) {
  if (!net || !text || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto parsed = cpn::parse_constraints(std::string_view(text, len));
    if (!parsed.ok())
      return fail(CPN_ERR_INPUT, join(parsed.diagnostics, cpn::Severity::Error));
    auto diags = cpn::resolve_constraints(*net->net, parsed.constraints, horizon);
    if (cpn::has_errors(diags))
      return fail(CPN_ERR_INPUT, join(diags, cpn::Severity::Error));
    *out = new cpn_constraints{std::move(parsed.constraints)};
    return CPN_OK;
  });
}

void cpn_constraints_free(cpn_constraints *cs) { delete cs; }

cpn_status cpn_enumerate(const cpn_net *net, const cpn_constraints *constraints, size_t horizon,
                         const cpn_mode *mode, size_t limit, cpn_trajectories **out) {
  if (!net || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    cpn::EnumerateOptions opts;
    opts.horizon = horizon;
    opts.mode = to_mode(mode);
    if (constraints)
      opts.constraints = constraints->items;
    if (limit > 0)
      opts.limit = limit;
    auto h = std::make_unique<cpn_trajectories>();
    h->net = net->net;
    h->horizon = horizon;
    h->items = cpn::enumerate_all(*net->net, net->initial, opts);
    *out = h.release();
    return CPN_OK;
  });
}

cpn_status cpn_count(const cpn_net *net, const cpn_constraints *constraints, size_t horizon,
                     const cpn_mode *mode, uint64_t *out) {
  if (!net || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cpn::EnumerateOptions opts;
    opts.horizon = horizon;
    opts.mode = to_mode(mode);
    if (constraints)
      opts.constraints = constraints->items;
    *out = cpn::count_trajectories(*net->net, net->initial, opts);
    return CPN_OK;
  });
}

size_t cpn_trajectories_size(const cpn_trajectories *ts) { return ts ? ts->items.size() : 0; }
void cpn_trajectories_free(cpn_trajectories *ts) { delete ts; }

cpn_status cpn_trajectory_render(const cpn_trajectories *ts, size_t index, int format,
                                 char **out) {
  if (!ts || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  if (index >= ts->items.size())
    return fail(CPN_ERR_ARGUMENT, "trajectory index out of range");
  return guarded([&] {
    const auto &t = ts->items[index];
    return put(out, format == CPN_FORMAT_JSON ? cpn::render_json(*ts->net, t, index) + "\n"
                                              : cpn::render_atoms(*ts->net, t, index));
  });
}

cpn_status cpn_trace_csv(const cpn_trajectories *ts, size_t index, const char *place,
                         const char *color, char **out) {
  if (!ts || !place || !color || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  if (index >= ts->items.size())
    return fail(CPN_ERR_ARGUMENT, "trajectory index out of range");
  return guarded([&] {
    auto series = cpn::timeseries(*ts->net, ts->items[index], place, color);
    return put(out, cpn::export_csv({series}));
  });
}

cpn_status cpn_emit_asp(const cpn_net *net, size_t horizon, uint64_t ntok, const cpn_mode *mode,
                        int dialect, char **out) {
  if (!net || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cpn::EmitterConfig cfg;
    cfg.horizon = horizon;
    cfg.ntok = ntok;
    cfg.mode = to_mode(mode);
    cfg.dialect = dialect == CPN_DIALECT_CLINGO5 ? cpn::AspDialect::Clingo5 : cpn::AspDialect::Legacy;
    return put(out, cpn::emit(*net->net, net->initial, cfg));
  });
}

cpn_status cpn_max_reachable_count(const cpn_net *net, size_t horizon, const cpn_mode *mode,
                                   uint64_t *out) {
  if (!net || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = cpn::max_reachable_count(*net->net, net->initial, horizon, to_mode(mode));
    return CPN_OK;
  });
}

cpn_status cpn_compare_answer_sets(const cpn_trajectories *native, const char *solver_output,
                                   size_t len, char **report) {
  if (!native || !solver_output || !report)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  *report = nullptr;
  return guarded([&] {
    auto external = cpn::parse_answer_sets(std::string_view(solver_output, len), *native->net,
                                           native->horizon);
    auto r = cpn::cross_validate(native->items, external);
    if (auto st = put(report, cpn::render_report(*native->net, r)); st != CPN_OK)
      return st;
    return r.equal() ? CPN_OK : fail(CPN_ERR_MISMATCH, "answer sets differ");
  });
}

cpn_status cpn_efficiency_sweep(const cpn_net *net, size_t horizon, const cpn_mode *mode,
                                const char *place, const char *color, char **out) {
  if (!net || !place || !color || !out)
    return fail(CPN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cpn::EnumerateOptions opts;
    opts.horizon = horizon;
    opts.mode = to_mode(mode);
    std::ostringstream os;
    os << "ts,min,max,min_value,max_value,states\n";
    for (const auto &r : cpn::efficiency_sweep(*net->net, net->initial, opts, place, color))
      os << r.ts << ',' << r.min.to_string() << ',' << r.max.to_string() << ','
         << r.min.value() << ',' << r.max.value() << ',' << r.states << '\n';
    return put(out, os.str());
  });
}

} // extern "C"
