#include "cpnasp/net.hpp"

#include <algorithm>

namespace cpn {

namespace {
const ColorMultiset kEmptyMultiset;
const std::set<std::string> kEmptySet;

bool contains(const std::vector<std::string> &v, const std::string &x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}
} // namespace

const ColorMultiset &Marking::at(const std::string &place) const {
  auto it = places_.find(place);
  return it == places_.end() ? kEmptyMultiset : it->second;
}

void Marking::set(const std::string &place, ColorMultiset tokens) {
  if (tokens.empty())
    places_.erase(place);
  else
    places_[place] = std::move(tokens);
}

void Marking::add(const std::string &place, const ColorMultiset &tokens) {
  if (tokens.empty())
    return;
  places_[place] += tokens;
}

bool NetDef::has_place(const std::string &p) const { return contains(places, p); }
bool NetDef::has_color(const std::string &c) const { return contains(colors, c); }

bool NetDef::has_transition(const std::string &t) const {
  return std::any_of(transitions.begin(), transitions.end(),
                     [&](const TransitionDef &d) { return d.id == t; });
}

const TransitionDef &NetDef::transition(const std::string &t) const {
  for (const auto &d : transitions)
    if (d.id == t)
      return d;
  throw UnknownTransition(t);
}

std::set<std::string> NetDef::color_set() const {
  return {colors.begin(), colors.end()};
}

std::set<std::string> NetDef::transition_ids() const {
  std::set<std::string> ids;
  for (const auto &t : transitions)
    ids.insert(t.id);
  return ids;
}

const std::set<std::string> &NetDef::resets_of(const std::string &t) const {
  auto it = reset_arcs.find(t);
  return it == reset_arcs.end() ? kEmptySet : it->second;
}

const std::set<std::string> &NetDef::inhibitors_of(const std::string &t) const {
  auto it = inhibit_arcs.find(t);
  return it == inhibit_arcs.end() ? kEmptySet : it->second;
}

bool NetDef::any_timed() const {
  return std::any_of(transitions.begin(), transitions.end(),
                     [](const TransitionDef &t) { return t.duration > 1; });
}

bool NetDef::any_priority() const {
  return std::any_of(transitions.begin(), transitions.end(),
                     [](const TransitionDef &t) { return t.priority != 0; });
}

std::vector<Violation> validate(const NetDef &net) {
  std::vector<Violation> out;
  auto error = [&](std::string code, std::string msg) {
    out.push_back({std::move(code), Severity::Error, std::move(msg)});
  };
  auto warn = [&](std::string code, std::string msg) {
    out.push_back({std::move(code), Severity::Warning, std::move(msg)});
  };

  auto check_dupes = [&](const std::vector<std::string> &ids, const char *what) {
    std::set<std::string> seen;
    for (const auto &id : ids)
      if (!seen.insert(id).second)
        error("DUPLICATE_" + std::string(what), std::string(what) + " '" + id +
                                                    "' declared more than once");
  };
  check_dupes(net.colors, "COLOR");
  check_dupes(net.places, "PLACE");
  std::vector<std::string> tids;
  for (const auto &t : net.transitions)
    tids.push_back(t.id);
  check_dupes(tids, "TRANSITION");
  for (const auto &t : tids)
    if (net.has_place(t))
      error("NAME_CLASH", "'" + t + "' is both a place and a transition");

  for (const auto &t : net.transitions)
    if (t.duration == 0)
      error("BAD_DURATION", "transition '" + t.id + "' has duration 0");

  auto check_place = [&](const std::string &p, const std::string &ctx) {
    if (!net.has_place(p))
      error("UNKNOWN_PLACE", ctx + " references undeclared place '" + p + "'");
  };
  auto check_trans = [&](const std::string &t, const std::string &ctx) {
    if (!net.has_transition(t))
      error("UNKNOWN_TRANSITION",
            ctx + " references undeclared transition '" + t + "'");
  };
  auto check_weight = [&](const ColorMultiset &w, const std::string &ctx) {
    if (w.empty())
      error("EMPTY_WEIGHT", ctx + " has an empty weight");
    for (const auto &[c, n] : w)
      if (!net.has_color(c))
        error("UNKNOWN_COLOR", ctx + " uses undeclared color '" + c + "'");
  };

  for (const auto &[pt, w] : net.input_arcs) {
    std::string ctx = "input arc " + pt.first + "->" + pt.second;
    check_place(pt.first, ctx);
    check_trans(pt.second, ctx);
    check_weight(w, ctx);
  }
  for (const auto &[tp, w] : net.output_arcs) {
    std::string ctx = "output arc " + tp.first + "->" + tp.second;
    check_trans(tp.first, ctx);
    check_place(tp.second, ctx);
    check_weight(w, ctx);
  }
  for (const auto &[pt, w] : net.read_arcs) {
    std::string ctx = "read arc " + pt.first + "->" + pt.second;
    check_place(pt.first, ctx);
    check_trans(pt.second, ctx);
    check_weight(w, ctx);
  }
  for (const auto *arcs : {&net.reset_arcs, &net.inhibit_arcs}) {
    const char *kind = arcs == &net.reset_arcs ? "reset" : "inhibitor";
    for (const auto &[t, ps] : *arcs) {
      std::string ctx = std::string(kind) + " arcs of " + t;
      check_trans(t, ctx);
      for (const auto &p : ps)
        check_place(p, ctx);
    }
  }

  for (const auto &[t, ps] : net.reset_arcs)
    for (const auto &p : ps) {
      if (net.input_arcs.count({p, t}))
        warn("OVERLAPPING_ARCS", "place '" + p + "' is both reset and input of '" + t + "'");
      if (net.read_arcs.count({p, t}))
        warn("OVERLAPPING_ARCS", "place '" + p + "' is both reset and read by '" + t + "'");
    }
  for (const auto &[pt, w] : net.read_arcs)
    if (net.input_arcs.count(pt))
      warn("OVERLAPPING_ARCS", "place '" + pt.first + "' is both input and read by '" +
                                   pt.second + "'");
  return out;
}

bool is_valid(const std::vector<Violation> &report) {
  return std::none_of(report.begin(), report.end(),
                      [](const Violation &v) { return v.severity == Severity::Error; });
}

std::set<std::string> preset(const NetDef &net, const std::string &t) {
  net.transition(t);
  std::set<std::string> ps;
  for (const auto &[pt, w] : net.input_arcs)
    if (pt.second == t)
      ps.insert(pt.first);
  return ps;
}

std::set<std::string> postset(const NetDef &net, const std::string &t) {
  net.transition(t);
  std::set<std::string> ps;
  for (const auto &[tp, w] : net.output_arcs)
    if (tp.first == t)
      ps.insert(tp.second);
  return ps;
}

} // namespace cpn
