#include "cpnasp/semantics.hpp"

#include <algorithm>

namespace cpn {

const char *to_string(FiringMode m) {
  switch (m) {
  case FiringMode::Set: return "set";
  case FiringMode::Maximal: return "max";
  case FiringMode::Interleaved: return "interleaved";
  }
  return "?";
}

std::optional<FiringMode> parse_firing_mode(const std::string &s) {
  if (s == "set") return FiringMode::Set;
  if (s == "max" || s == "maximal") return FiringMode::Maximal;
  if (s == "interleaved") return FiringMode::Interleaved;
  return std::nullopt;
}

const char *to_string(InvalidReason r) {
  switch (r) {
  case InvalidReason::NotEnabled: return "not-enabled";
  case InvalidReason::Overconsumption: return "overconsumption";
  case InvalidReason::NotMaximal: return "not-maximal";
  case InvalidReason::PriorityViolation: return "priority-violation";
  case InvalidReason::Reentrancy: return "reentrancy";
  case InvalidReason::NotInterleaved: return "not-interleaved";
  case InvalidReason::Stutter: return "stutter";
  }
  return "?";
}

InvalidFiringSet::InvalidFiringSet(std::size_t step, InvalidReason reason,
                                   const std::string &detail)
    : std::runtime_error("invalid firing set at step " + std::to_string(step) + " (" +
                         to_string(reason) + "): " + detail),
      step_(step), reason_(reason) {}

namespace {

bool in_progress(const ExecState &state, const std::string &t) {
  return std::any_of(state.in_progress.begin(), state.in_progress.end(),
                     [&](const InProgress &r) { return r.transition == t; });
}

// Enabledness ignoring reentrancy.
bool structurally_enabled(const NetDef &net, const ExecState &state, const std::string &t) {
  for (const auto &[pt, w] : net.input_arcs)
    if (pt.second == t && !ms_leq(w, state.marking.at(pt.first)))
      return false;
  // Inhibition is whole-place: any token of any color blocks.
  for (const auto &p : net.inhibitors_of(t))
    if (!state.marking.at(p).empty())
      return false;
  for (const auto &[pt, w] : net.read_arcs)
    if (pt.second == t && !ms_leq(w, state.marking.at(pt.first)))
      return false;
  return true;
}

using Demand = std::map<std::pair<std::string, std::string>, Count>;

} // namespace

bool enabled(const NetDef &net, const ExecState &state, const std::string &t,
             const SemanticsMode &mode) {
  net.transition(t);
  if (!structurally_enabled(net, state, t))
    return false;
  if (!mode.reentrant && in_progress(state, t))
    return false;
  return true;
}

std::set<std::string> enabled_set(const NetDef &net, const ExecState &state,
                                  const SemanticsMode &mode) {
  std::set<std::string> out;
  for (const auto &t : net.transitions)
    if (enabled(net, state, t.id, mode))
      out.insert(t.id);
  return out;
}

std::set<std::string> priority_enabled(const NetDef &net, const ExecState &state,
                                       const SemanticsMode &mode) {
  auto en = enabled_set(net, state, mode);
  if (!mode.priorities_active || en.empty())
    return en;
  unsigned best = ~0u;
  for (const auto &t : en)
    best = std::min(best, net.transition(t).priority);
  std::set<std::string> out;
  for (const auto &t : en)
    if (net.transition(t).priority == best)
      out.insert(t);
  return out;
}

Demand consumption(const NetDef &net, const ExecState &state, const FiringSet &fs) {
  Demand d;
  for (const auto &[pt, w] : net.input_arcs) {
    if (!fs.count(pt.second))
      continue;
    for (const auto &[c, n] : w)
      d[{pt.first, c}] += n;
  }
  for (const auto &t : fs)
    for (const auto &p : net.resets_of(t))
      for (const auto &[c, n] : state.marking.at(p))
        d[{p, c}] += n;
  return d;
}

std::optional<ConsumptionWitness> overconsumes(const NetDef &net, const ExecState &state,
                                               const FiringSet &fs) {
  for (const auto &[pc, need] : consumption(net, state, fs)) {
    Count have = state.marking.count(pc.first, pc.second);
    if (need > have)
      return ConsumptionWitness{pc.first, pc.second, need, have};
  }
  return std::nullopt;
}

bool could_not_have(const NetDef &net, const ExecState &state, const FiringSet &fs,
                    const std::string &t) {
  auto demand = consumption(net, state, fs);
  auto leftover = [&](const std::string &p, const std::string &c) -> long long {
    auto it = demand.find({p, c});
    Count used = it == demand.end() ? 0 : it->second;
    return static_cast<long long>(state.marking.count(p, c)) - static_cast<long long>(used);
  };
  for (const auto &[pt, w] : net.input_arcs) {
    if (pt.second != t)
      continue;
    for (const auto &[c, n] : w)
      if (static_cast<long long>(n) > leftover(pt.first, c))
        return true;
  }
  // A reset arc requires the full current marking; empty places impose nothing.
  for (const auto &p : net.resets_of(t))
    for (const auto &[c, n] : state.marking.at(p))
      if (static_cast<long long>(n) > leftover(p, c))
        return true;
  return false;
}

std::vector<FiringSet> valid_firing_sets(const NetDef &net, const ExecState &state,
                                         const SemanticsMode &mode) {
  auto pe = priority_enabled(net, state, mode);
  std::vector<std::string> cand(pe.begin(), pe.end());

  // Overconsumption is monotone in set inclusion, so a branch stops growing as
  // soon as it overconsumes.
  std::vector<FiringSet> feasible;
  FiringSet cur;
  auto grow = [&](auto &&self, std::size_t from) -> void {
    feasible.push_back(cur);
    if (mode.firing == FiringMode::Interleaved && !cur.empty())
      return;
    for (std::size_t i = from; i < cand.size(); ++i) {
      cur.insert(cand[i]);
      if (!overconsumes(net, state, cur))
        self(self, i + 1);
      cur.erase(cand[i]);
    }
  };
  grow(grow, 0);

  std::vector<FiringSet> out;
  for (auto &fs : feasible) {
    if (mode.forbid_stutter && fs.empty() && !cand.empty())
      continue;
    if (mode.firing == FiringMode::Maximal) {
      bool maximal = std::all_of(cand.begin(), cand.end(), [&](const std::string &t) {
        return fs.count(t) || could_not_have(net, state, fs, t);
      });
      if (!maximal)
        continue;
    }
    out.push_back(std::move(fs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExecState apply(const NetDef &net, const ExecState &state, const FiringSet &fs) {
  const std::size_t k = state.step;
  ExecState next;
  next.step = k + 1;

  std::map<std::pair<std::size_t, std::string>, ColorMultiset> pending;
  for (const auto &sp : state.pending)
    pending[{sp.due_step, sp.place}] += sp.tokens;
  for (const auto &[tp, w] : net.output_arcs)
    if (fs.count(tp.first))
      pending[{k + net.transition(tp.first).duration, tp.second}] += w;

  Marking m;
  std::map<std::string, ColorMultiset> consumed;
  for (const auto &[pc, n] : consumption(net, state, fs))
    consumed[pc.first].set(pc.second, n);

  std::set<std::string> touched;
  for (const auto &[p, ms] : state.marking)
    touched.insert(p);
  for (const auto &[key, ms] : pending)
    if (key.first == k + 1)
      touched.insert(key.second);

  for (const auto &p : touched) {
    ColorMultiset v = state.marking.at(p);
    if (auto it = consumed.find(p); it != consumed.end())
      v = ms_sub(v, it->second);
    if (auto it = pending.find({k + 1, p}); it != pending.end())
      v += it->second;
    m.set(p, std::move(v));
  }
  next.marking = std::move(m);

  for (auto &[key, ms] : pending)
    if (key.first > k + 1 && !ms.empty())
      next.pending.push_back({key.first, key.second, ms});

  for (const auto &r : state.in_progress)
    if (r.fire_step + net.transition(r.transition).duration > k + 1)
      next.in_progress.push_back(r);
  for (const auto &t : fs)
    if (k + net.transition(t).duration > k + 1)
      next.in_progress.push_back({t, k});
  std::sort(next.in_progress.begin(), next.in_progress.end());
  return next;
}

std::optional<std::pair<InvalidReason, std::string>>
check_firing_set(const NetDef &net, const ExecState &state, const FiringSet &fs,
                 const SemanticsMode &mode) {
  using R = InvalidReason;
  for (const auto &t : fs) {
    if (!net.has_transition(t))
      return std::pair{R::NotEnabled, "unknown transition '" + t + "'"};
    if (!structurally_enabled(net, state, t))
      return std::pair{R::NotEnabled, "'" + t + "' is not enabled"};
    if (!mode.reentrant && in_progress(state, t))
      return std::pair{R::Reentrancy, "'" + t + "' is still in progress"};
  }
  auto pe = priority_enabled(net, state, mode);
  for (const auto &t : fs)
    if (!pe.count(t))
      return std::pair{R::PriorityViolation,
                       "'" + t + "' is dominated by a higher-priority transition"};
  if (auto w = overconsumes(net, state, fs))
    return std::pair{R::Overconsumption,
                     w->place + "." + w->color + " needs " + std::to_string(w->required) +
                         ", has " + std::to_string(w->available)};
  if (mode.firing == FiringMode::Interleaved && fs.size() > 1)
    return std::pair{R::NotInterleaved, "more than one transition fires"};
  if (mode.forbid_stutter && fs.empty() && !pe.empty())
    return std::pair{R::Stutter, "empty firing set while transitions are enabled"};
  if (mode.firing == FiringMode::Maximal)
    for (const auto &t : pe)
      if (!fs.count(t) && !could_not_have(net, state, fs, t))
        return std::pair{R::NotMaximal, "'" + t + "' could also have fired"};
  return std::nullopt;
}

Trajectory replay(const NetDef &net, const Marking &m0, const std::vector<FiringSet> &sigma,
                  const SemanticsMode &mode) {
  if (sigma.empty())
    throw std::invalid_argument("replay needs at least one firing set");
  Trajectory traj;
  ExecState s = ExecState::initial(m0);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (auto bad = check_firing_set(net, s, sigma[i], mode))
      throw InvalidFiringSet(i, bad->first, bad->second);
    traj.markings.push_back(s.marking);
    traj.firings.push_back(sigma[i]);
    if (i + 1 < sigma.size())
      s = apply(net, s, sigma[i]);
  }
  return traj;
}

} // namespace cpn
