#pragma once

#include "cpnasp/multiset.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cpn {

struct TransitionDef {
  std::string id;
  /// Lower number means higher priority.
  unsigned priority = 0;
  /// Time steps between firing and delivery of output tokens. Must be >= 1.
  unsigned duration = 1;

  friend bool operator==(const TransitionDef &, const TransitionDef &) = default;
};

/// Per-place colored marking. Places that are absent are empty.
class Marking {
public:
  using Entries = std::map<std::string, ColorMultiset>;

  const ColorMultiset &at(const std::string &place) const;
  Count count(const std::string &place, const std::string &color) const {
    return at(place).count(color);
  }
  void set(const std::string &place, ColorMultiset tokens);
  void add(const std::string &place, const ColorMultiset &tokens);

  bool empty() const { return places_.empty(); }
  const Entries &places() const { return places_; }
  auto begin() const { return places_.begin(); }
  auto end() const { return places_.end(); }

  friend bool operator==(const Marking &, const Marking &) = default;
  friend auto operator<=>(const Marking &a, const Marking &b) {
    return a.places_ <=> b.places_;
  }

private:
  Entries places_;
};

using PlaceTransition = std::pair<std::string, std::string>;
using TransitionPlace = std::pair<std::string, std::string>;

/// Immutable net structure. Declaration order of colors, places and
/// transitions is kept for rendering; every semantic ordering elsewhere is
/// lexicographic by identifier.
struct NetDef {
  std::string name = "net";
  std::vector<std::string> colors;
  std::vector<std::string> places;
  std::vector<TransitionDef> transitions;

  std::map<PlaceTransition, ColorMultiset> input_arcs;
  std::map<TransitionPlace, ColorMultiset> output_arcs;
  std::map<std::string, std::set<std::string>> reset_arcs;
  std::map<std::string, std::set<std::string>> inhibit_arcs;
  std::map<PlaceTransition, ColorMultiset> read_arcs;

  bool has_place(const std::string &p) const;
  bool has_color(const std::string &c) const;
  bool has_transition(const std::string &t) const;
  /// Throws std::out_of_range for an undeclared transition.
  const TransitionDef &transition(const std::string &t) const;

  std::set<std::string> color_set() const;
  std::set<std::string> transition_ids() const;

  /// Places the transition resets / is inhibited by (empty set if none).
  const std::set<std::string> &resets_of(const std::string &t) const;
  const std::set<std::string> &inhibitors_of(const std::string &t) const;

  bool any_timed() const;
  bool any_priority() const;

  friend bool operator==(const NetDef &, const NetDef &) = default;
};

class UnknownTransition : public std::out_of_range {
public:
  explicit UnknownTransition(const std::string &t)
      : std::out_of_range("unknown transition '" + t + "'") {}
};

enum class Severity { Error, Warning };

struct Violation {
  std::string code;
  Severity severity = Severity::Error;
  std::string message;
};

/// Every structural problem of the net. Warnings (overlapping arc kinds on one
/// place/transition pair) do not make a net invalid.
std::vector<Violation> validate(const NetDef &net);
bool is_valid(const std::vector<Violation> &report);

/// Places with a normal input arc into `t`.
std::set<std::string> preset(const NetDef &net, const std::string &t);
/// Places receiving an output arc from `t`.
std::set<std::string> postset(const NetDef &net, const std::string &t);

} // namespace cpn
