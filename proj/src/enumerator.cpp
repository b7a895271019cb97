#include "cpnasp/enumerator.hpp"

#include <map>
#include <set>
#include <sstream>

namespace cpn {

bool Constraint::satisfied_by(const Marking &m) const {
  Count have = m.count(place, color);
  switch (kind) {
  case Kind::HoldsAtLeast: return have >= count;
  case Kind::HoldsExactly: return have == count;
  default: return true;
  }
}

bool Constraint::satisfied_by(const FiringSet &fs) const {
  switch (kind) {
  case Kind::Fires: return fs.count(transition) > 0;
  case Kind::NotFires: return fs.count(transition) == 0;
  default: return true;
  }
}

std::string Constraint::to_string() const {
  std::ostringstream os;
  switch (kind) {
  case Kind::Fires: os << "fires(" << transition << ")"; break;
  case Kind::NotFires: os << "not fires(" << transition << ")"; break;
  case Kind::HoldsAtLeast: os << "holds(" << place << ", " << color << ") >= " << count; break;
  case Kind::HoldsExactly: os << "holds(" << place << ", " << color << ") = " << count; break;
  }
  os << " at " << at_step << ";";
  return os.str();
}

void check_constraints(const NetDef &net, const std::vector<Constraint> &cs,
                       std::size_t horizon) {
  for (const auto &c : cs) {
    if (c.at_step > horizon)
      throw std::invalid_argument("constraint '" + c.to_string() + "' is beyond horizon " +
                                  std::to_string(horizon));
    if (c.is_holds()) {
      if (!net.has_place(c.place))
        throw std::invalid_argument("constraint references unknown place '" + c.place + "'");
      if (!net.has_color(c.color))
        throw std::invalid_argument("constraint references unknown color '" + c.color + "'");
    } else if (!net.has_transition(c.transition)) {
      throw std::invalid_argument("constraint references unknown transition '" +
                                  c.transition + "'");
    }
  }
}

namespace {

class Search {
public:
  Search(const NetDef &net, const EnumerateOptions &opts) : net_(net), opts_(opts) {
    check_constraints(net, opts.constraints, opts.horizon);
    by_step_.resize(opts.horizon + 1);
    for (const auto &c : opts.constraints)
      by_step_[c.at_step].push_back(&c);
  }

  bool marking_ok(const ExecState &s) const {
    for (const auto *c : by_step_[s.step])
      if (c->is_holds() && !c->satisfied_by(s.marking))
        return false;
    return true;
  }

  bool firing_ok(std::size_t step, const FiringSet &fs) const {
    for (const auto *c : by_step_[step])
      if (!c->is_holds() && !c->satisfied_by(fs))
        return false;
    return true;
  }

  const std::vector<FiringSet> &choices(const ExecState &s) {
    auto it = cache_.find(s);
    if (it == cache_.end())
      it = cache_.emplace(s, valid_firing_sets(net_, s, opts_.mode)).first;
    return it->second;
  }

  void forget() { cache_.clear(); }

  const NetDef &net_;
  const EnumerateOptions &opts_;

private:
  std::vector<std::vector<const Constraint *>> by_step_;
  std::map<ExecState, std::vector<FiringSet>> cache_;
};

} // namespace

std::size_t enumerate(const NetDef &net, const Marking &m0, const EnumerateOptions &opts,
                      const std::function<bool(const Trajectory &)> &visit) {
  Search search(net, opts);
  std::size_t yielded = 0;
  bool stop = opts.limit && *opts.limit == 0;
  Trajectory cur;

  auto dfs = [&](auto &&self, const ExecState &s) -> void {
    if (stop || !search.marking_ok(s))
      return;
    cur.markings.push_back(s.marking);
    // Copy: the cache may rehash while descending.
    const std::vector<FiringSet> sets = search.choices(s);
    for (const auto &fs : sets) {
      if (stop)
        break;
      if (!search.firing_ok(s.step, fs))
        continue;
      cur.firings.push_back(fs);
      if (s.step == opts.horizon) {
        ++yielded;
        if (opts.progress)
          opts.progress(yielded);
        if (!visit(cur) || (opts.limit && yielded >= *opts.limit))
          stop = true;
      } else {
        self(self, apply(net, s, fs));
      }
      cur.firings.pop_back();
    }
    cur.markings.pop_back();
  };
  dfs(dfs, ExecState::initial(m0));
  return yielded;
}

std::vector<Trajectory> enumerate_all(const NetDef &net, const Marking &m0,
                                      const EnumerateOptions &opts) {
  std::vector<Trajectory> out;
  enumerate(net, m0, opts, [&](const Trajectory &t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::uint64_t count_trajectories(const NetDef &net, const Marking &m0,
                                 const EnumerateOptions &opts) {
  Search search(net, opts);
  std::map<ExecState, std::uint64_t> memo;

  auto count = [&](auto &&self, const ExecState &s) -> std::uint64_t {
    if (auto it = memo.find(s); it != memo.end())
      return it->second;
    std::uint64_t total = 0;
    if (search.marking_ok(s)) {
      const std::vector<FiringSet> sets = search.choices(s);
      for (const auto &fs : sets) {
        if (!search.firing_ok(s.step, fs))
          continue;
        total += s.step == opts.horizon ? 1 : self(self, apply(net, s, fs));
      }
    }
    memo.emplace(s, total);
    return total;
  };
  return count(count, ExecState::initial(m0));
}

std::vector<std::vector<ExecState>> reachable_states(const NetDef &net, const Marking &m0,
                                                     const EnumerateOptions &opts) {
  Search search(net, opts);
  std::vector<std::vector<ExecState>> layers(opts.horizon + 1);
  std::set<ExecState> frontier;
  auto s0 = ExecState::initial(m0);
  if (search.marking_ok(s0))
    frontier.insert(s0);
  for (std::size_t k = 0; k <= opts.horizon; ++k) {
    layers[k].assign(frontier.begin(), frontier.end());
    if (k == opts.horizon)
      break;
    std::set<ExecState> next;
    for (const auto &s : frontier)
      for (const auto &fs : search.choices(s)) {
        if (!search.firing_ok(k, fs))
          continue;
        auto n = apply(net, s, fs);
        if (search.marking_ok(n))
          next.insert(std::move(n));
      }
    search.forget();
    frontier = std::move(next);
  }
  return layers;
}

} // namespace cpn
