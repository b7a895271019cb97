// Shared helpers for the test binaries: fixture loading, a random net
// generator and a brute-force reference engine that does not use the
// semantics module.
#pragma once

#include "cpnasp/netdsl.hpp"
#include "cpnasp/semantics.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

inline std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string &name) {
  return std::string(CPNASP_NETS_DIR) + "/" + name;
}

struct Loaded {
  cpn::NetDef net;
  cpn::Marking m0;
};

inline Loaded load_net(const std::string &name) {
  auto parsed = cpn::parse_net(read_text(fixture_path(name)));
  if (!parsed.ok()) {
    std::string msg = name + " failed to parse:";
    for (const auto &d : parsed.diagnostics)
      msg += "\n" + d.to_string();
    throw std::runtime_error(msg);
  }
  return {*parsed.net, parsed.initial};
}

// Random net within the desk-scale bounds: <=3 places, <=3 transitions,
// <=2 colors, weights <=2, initial counts <=3.
struct NetShape {
  bool resets = true;
  bool inhibitors = true;
  bool reads = true;
  bool priorities = true;
  bool durations = true;
};

inline cpn::NetDef random_net(std::mt19937 &rng, const NetShape &shape = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](int percent) { return pick(1, 100) <= percent; };

  cpn::NetDef net;
  net.name = "rnd";
  const char *colors[] = {"a", "b"};
  for (int i = 0, n = pick(1, 2); i < n; ++i)
    net.colors.push_back(colors[i]);
  const char *places[] = {"p1", "p2", "p3"};
  for (int i = 0, n = pick(1, 3); i < n; ++i)
    net.places.push_back(places[i]);
  const char *transitions[] = {"t1", "t2", "t3"};
  for (int i = 0, n = pick(1, 3); i < n; ++i) {
    cpn::TransitionDef t{transitions[i]};
    if (shape.priorities)
      t.priority = pick(0, 1);
    if (shape.durations)
      t.duration = pick(1, 2);
    net.transitions.push_back(t);
  }

  auto weight = [&] {
    cpn::ColorMultiset w;
    while (w.empty())
      for (const auto &c : net.colors)
        if (chance(60))
          w.set(c, pick(1, 2));
    return w;
  };

  for (const auto &t : net.transitions) {
    for (const auto &p : net.places) {
      bool reset = shape.resets && chance(12);
      if (reset)
        net.reset_arcs[t.id].insert(p);
      // A reset plus an input arc on the same pair always overconsumes; such
      // a transition is dead, so keep them apart to exercise more firings.
      if (!reset && chance(45))
        net.input_arcs[{p, t.id}] = weight();
      if (chance(45))
        net.output_arcs[{t.id, p}] = weight();
      if (shape.inhibitors && chance(10))
        net.inhibit_arcs[t.id].insert(p);
      if (shape.reads && chance(12))
        net.read_arcs[{p, t.id}] = weight();
    }
  }
  return net;
}

inline cpn::Marking random_marking(std::mt19937 &rng, const cpn::NetDef &net) {
  cpn::Marking m;
  for (const auto &p : net.places) {
    cpn::ColorMultiset ms;
    for (const auto &c : net.colors)
      ms.set(c, std::uniform_int_distribution<int>(0, 3)(rng));
    m.set(p, ms);
  }
  return m;
}

inline cpn::SemanticsMode random_mode(std::mt19937 &rng, cpn::FiringMode firing) {
  cpn::SemanticsMode mode;
  mode.firing = firing;
  mode.reentrant = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  mode.priorities_active = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  return mode;
}

// ---------------------------------------------------------------------------
// Reference engine. Everything below works on plain integer tables indexed by
// (place, color) and re-derives enabling, conflict and maximality straight
// from their definitions for every subset of transitions.

namespace ref {

using Table = std::vector<std::vector<long long>>; // [place][color]

struct Net {
  const cpn::NetDef *def;
  std::size_t np, nc, nt;
  std::vector<Table> in, out, read; // [transition]
  std::vector<std::vector<bool>> reset, inhibit;
  std::vector<unsigned> prio, dur;
};

inline Net compile(const cpn::NetDef &d) {
  Net n{&d, d.places.size(), d.colors.size(), d.transitions.size(), {}, {}, {}, {}, {}, {}, {}};
  auto table = [&] { return Table(n.np, std::vector<long long>(n.nc, 0)); };
  for (std::size_t t = 0; t < n.nt; ++t) {
    const auto &tid = d.transitions[t].id;
    n.in.push_back(table());
    n.out.push_back(table());
    n.read.push_back(table());
    n.reset.emplace_back(n.np, false);
    n.inhibit.emplace_back(n.np, false);
    n.prio.push_back(d.transitions[t].priority);
    n.dur.push_back(d.transitions[t].duration);
    for (std::size_t p = 0; p < n.np; ++p) {
      const auto &pid = d.places[p];
      for (std::size_t c = 0; c < n.nc; ++c) {
        const auto &cid = d.colors[c];
        if (auto it = d.input_arcs.find({pid, tid}); it != d.input_arcs.end())
          n.in[t][p][c] = it->second.count(cid);
        if (auto it = d.output_arcs.find({tid, pid}); it != d.output_arcs.end())
          n.out[t][p][c] = it->second.count(cid);
        if (auto it = d.read_arcs.find({pid, tid}); it != d.read_arcs.end())
          n.read[t][p][c] = it->second.count(cid);
      }
      if (auto it = d.reset_arcs.find(tid); it != d.reset_arcs.end())
        n.reset[t][p] = it->second.count(pid) > 0;
      if (auto it = d.inhibit_arcs.find(tid); it != d.inhibit_arcs.end())
        n.inhibit[t][p] = it->second.count(pid) > 0;
    }
  }
  return n;
}

inline Table to_table(const Net &n, const cpn::Marking &m) {
  Table tb(n.np, std::vector<long long>(n.nc, 0));
  for (std::size_t p = 0; p < n.np; ++p)
    for (std::size_t c = 0; c < n.nc; ++c)
      tb[p][c] = static_cast<long long>(m.count(n.def->places[p], n.def->colors[c]));
  return tb;
}

inline cpn::Marking to_marking(const Net &n, const Table &tb) {
  cpn::Marking m;
  for (std::size_t p = 0; p < n.np; ++p) {
    cpn::ColorMultiset ms;
    for (std::size_t c = 0; c < n.nc; ++c)
      ms.set(n.def->colors[c], static_cast<cpn::Count>(tb[p][c]));
    m.set(n.def->places[p], ms);
  }
  return m;
}

inline bool place_empty(const Table &m, std::size_t p) {
  return std::all_of(m[p].begin(), m[p].end(), [](long long v) { return v == 0; });
}

// history[l] = set fired at step l, as a bitmask over transitions.
inline bool enabled(const Net &n, const Table &m, std::size_t t, std::size_t step,
                    const std::vector<unsigned> &history, bool reentrant) {
  for (std::size_t p = 0; p < n.np; ++p) {
    for (std::size_t c = 0; c < n.nc; ++c) {
      if (m[p][c] < n.in[t][p][c] || m[p][c] < n.read[t][p][c])
        return false;
    }
    if (n.inhibit[t][p] && !place_empty(m, p))
      return false;
  }
  if (!reentrant)
    for (std::size_t l = 0; l < step; ++l)
      if ((history[l] >> t & 1u) && step < l + n.dur[t])
        return false;
  return true;
}

inline bool conflicts(const Net &n, const Table &m, unsigned set) {
  for (std::size_t p = 0; p < n.np; ++p)
    for (std::size_t c = 0; c < n.nc; ++c) {
      long long demand = 0;
      for (std::size_t t = 0; t < n.nt; ++t)
        if (set >> t & 1u)
          demand += n.in[t][p][c] + (n.reset[t][p] ? m[p][c] : 0);
      if (demand > m[p][c])
        return true;
    }
  return false;
}

// Whether `set` is an admissible firing set at this state.
inline bool admissible(const Net &n, const Table &m, std::size_t step,
                       const std::vector<unsigned> &history, unsigned set,
                       const cpn::SemanticsMode &mode) {
  unsigned en = 0;
  for (std::size_t t = 0; t < n.nt; ++t)
    if (enabled(n, m, t, step, history, mode.reentrant))
      en |= 1u << t;
  unsigned pe = en;
  if (mode.priorities_active)
    for (std::size_t t = 0; t < n.nt; ++t)
      for (std::size_t u = 0; u < n.nt; ++u)
        if ((en >> t & 1u) && (en >> u & 1u) && n.prio[u] < n.prio[t])
          pe &= ~(1u << t);
  if ((set & ~pe) != 0)
    return false;
  if (conflicts(n, m, set))
    return false;
  if (mode.firing == cpn::FiringMode::Interleaved && __builtin_popcount(set) > 1)
    return false;
  if (mode.firing == cpn::FiringMode::Maximal)
    for (std::size_t t = 0; t < n.nt; ++t)
      if ((pe >> t & 1u) && !(set >> t & 1u) && !conflicts(n, m, set | 1u << t))
        return false;
  if (mode.forbid_stutter && set == 0 && pe != 0)
    return false;
  return true;
}

// Marking at step+1: consumption of history[step] and every production due at
// step+1, whichever step it was fired at.
inline Table next(const Net &n, const Table &m, std::size_t step,
                  const std::vector<unsigned> &history) {
  Table r = m;
  unsigned set = history[step];
  for (std::size_t p = 0; p < n.np; ++p)
    for (std::size_t c = 0; c < n.nc; ++c) {
      for (std::size_t t = 0; t < n.nt; ++t)
        if (set >> t & 1u)
          r[p][c] -= n.in[t][p][c] + (n.reset[t][p] ? m[p][c] : 0);
      for (std::size_t l = 0; l <= step; ++l)
        for (std::size_t t = 0; t < n.nt; ++t)
          if ((history[l] >> t & 1u) && l + n.dur[t] == step + 1)
            r[p][c] += n.out[t][p][c];
    }
  return r;
}

inline cpn::FiringSet to_set(const Net &n, unsigned mask) {
  cpn::FiringSet fs;
  for (std::size_t t = 0; t < n.nt; ++t)
    if (mask >> t & 1u)
      fs.insert(n.def->transitions[t].id);
  return fs;
}

// Every subset sequence T_0..T_k filtered by the definitions, sorted.
inline std::vector<cpn::Trajectory> brute_force(const cpn::NetDef &def, const cpn::Marking &m0,
                                                std::size_t horizon,
                                                const cpn::SemanticsMode &mode) {
  Net n = compile(def);
  std::vector<cpn::Trajectory> out;
  std::vector<unsigned> history;
  std::vector<Table> markings{to_table(n, m0)};
  unsigned all = (1u << n.nt);

  auto rec = [&](auto &&self, std::size_t step) -> void {
    for (unsigned set = 0; set < all; ++set) {
      history.push_back(set);
      if (admissible(n, markings.back(), step, history, set, mode)) {
        if (step == horizon) {
          cpn::Trajectory tr;
          for (const auto &tb : markings)
            tr.markings.push_back(to_marking(n, tb));
          for (unsigned h : history)
            tr.firings.push_back(to_set(n, h));
          out.push_back(std::move(tr));
        } else {
          markings.push_back(next(n, markings.back(), step, history));
          self(self, step + 1);
          markings.pop_back();
        }
      }
      history.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Untimed engine: production lands in the very next marking regardless of
// any duration, with no notion of scheduled deliveries.
inline std::vector<cpn::Trajectory> untimed(const cpn::NetDef &def, const cpn::Marking &m0,
                                            std::size_t horizon, cpn::SemanticsMode mode) {
  Net n = compile(def);
  mode.reentrant = true;
  std::vector<cpn::Trajectory> out;
  std::vector<unsigned> fired;
  std::vector<Table> markings{to_table(n, m0)};
  const std::vector<unsigned> no_history(horizon + 1, 0);

  auto rec = [&](auto &&self, std::size_t step) -> void {
    const Table m = markings.back();
    for (unsigned set = 0; set < (1u << n.nt); ++set) {
      if (!admissible(n, m, 0, no_history, set, mode))
        continue;
      fired.push_back(set);
      if (step == horizon) {
        cpn::Trajectory tr;
        for (const auto &tb : markings)
          tr.markings.push_back(to_marking(n, tb));
        for (unsigned h : fired)
          tr.firings.push_back(to_set(n, h));
        out.push_back(std::move(tr));
      } else {
        Table r = m;
        for (std::size_t t = 0; t < n.nt; ++t)
          if (set >> t & 1u)
            for (std::size_t p = 0; p < n.np; ++p)
              for (std::size_t c = 0; c < n.nc; ++c)
                r[p][c] += n.out[t][p][c] - n.in[t][p][c] - (n.reset[t][p] ? m[p][c] : 0);
        markings.push_back(r);
        self(self, step + 1);
        markings.pop_back();
      }
      fired.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace ref

inline std::string describe(const std::vector<cpn::Trajectory> &ts) {
  std::ostringstream os;
  for (const auto &t : ts) {
    for (std::size_t k = 0; k < t.firings.size(); ++k) {
      os << '{';
      bool first = true;
      for (const auto &x : t.firings[k]) {
        os << (first ? "" : ",") << x;
        first = false;
      }
      os << '}';
    }
    os << '\n';
  }
  return os.str();
}

} // namespace testing
