#pragma once

#include "cpnasp/net.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpn {

/// Tokens fired earlier that enter the marking at `due_step`.
struct ScheduledProduction {
  std::size_t due_step = 0;
  std::string place;
  ColorMultiset tokens;

  friend auto operator<=>(const ScheduledProduction &, const ScheduledProduction &) = default;
};

struct InProgress {
  std::string transition;
  std::size_t fire_step = 0;

  friend auto operator<=>(const InProgress &, const InProgress &) = default;
};

struct ExecState {
  std::size_t step = 0;
  Marking marking;
  /// Sorted by (due_step, place); at most one entry per pair.
  std::vector<ScheduledProduction> pending;
  /// Sorted by (transition, fire_step).
  std::vector<InProgress> in_progress;

  static ExecState initial(Marking m0) {
    ExecState s;
    s.marking = std::move(m0);
    return s;
  }

  friend bool operator==(const ExecState &, const ExecState &) = default;
  friend auto operator<=>(const ExecState &a, const ExecState &b) {
    if (auto c = a.step <=> b.step; c != 0) return c;
    if (auto c = a.marking <=> b.marking; c != 0) return c;
    if (auto c = a.pending <=> b.pending; c != 0) return c;
    return a.in_progress <=> b.in_progress;
  }
};

using FiringSet = std::set<std::string>;

enum class FiringMode { Set, Maximal, Interleaved };

struct SemanticsMode {
  FiringMode firing = FiringMode::Maximal;
  bool reentrant = true;
  bool priorities_active = false;
  /// Drop the empty firing set whenever some transition is priority-enabled.
  bool forbid_stutter = false;
};

const char *to_string(FiringMode m);
std::optional<FiringMode> parse_firing_mode(const std::string &s);

struct ConsumptionWitness {
  std::string place;
  std::string color;
  Count required = 0;
  Count available = 0;

  friend bool operator==(const ConsumptionWitness &, const ConsumptionWitness &) = default;
};

bool enabled(const NetDef &net, const ExecState &state, const std::string &t,
             const SemanticsMode &mode);

/// Enabled transitions, lexicographic.
std::set<std::string> enabled_set(const NetDef &net, const ExecState &state,
                                  const SemanticsMode &mode);

/// Enabled transitions not dominated by an enabled transition with a strictly
/// smaller priority number. Equal to enabled_set when priorities are off.
std::set<std::string> priority_enabled(const NetDef &net, const ExecState &state,
                                       const SemanticsMode &mode);

/// Per (place, color) token demand of a firing set: normal input weights plus
/// the full current marking for each reset arc.
std::map<std::pair<std::string, std::string>, Count>
consumption(const NetDef &net, const ExecState &state, const FiringSet &fs);

/// First (place, color) in lexicographic order whose demand exceeds the
/// current marking, if any.
std::optional<ConsumptionWitness> overconsumes(const NetDef &net, const ExecState &state,
                                               const FiringSet &fs);

/// True iff `t` could not be added to `fs` without some input or reset-derived
/// arc of `t` exceeding what `fs` leaves behind.
bool could_not_have(const NetDef &net, const ExecState &state, const FiringSet &fs,
                    const std::string &t);

/// All firing sets admitted by `mode` at `state`, in lexicographic order.
std::vector<FiringSet> valid_firing_sets(const NetDef &net, const ExecState &state,
                                         const SemanticsMode &mode);

/// Executes `fs` (assumed valid) producing the state at step + 1.
ExecState apply(const NetDef &net, const ExecState &state, const FiringSet &fs);

/// Alternating markings and firing sets M_0, T_0, ..., M_k, T_k. The effect
/// of T_k is not materialized.
struct Trajectory {
  std::vector<Marking> markings;
  std::vector<FiringSet> firings;

  std::size_t horizon() const { return firings.empty() ? 0 : firings.size() - 1; }
  friend bool operator==(const Trajectory &, const Trajectory &) = default;
  friend auto operator<=>(const Trajectory &a, const Trajectory &b) {
    if (auto c = a.firings <=> b.firings; c != 0) return c;
    return a.markings <=> b.markings;
  }
};

enum class InvalidReason {
  NotEnabled,
  Overconsumption,
  NotMaximal,
  PriorityViolation,
  Reentrancy,
  NotInterleaved,
  Stutter,
};

const char *to_string(InvalidReason r);

class InvalidFiringSet : public std::runtime_error {
public:
  InvalidFiringSet(std::size_t step, InvalidReason reason, const std::string &detail);
  std::size_t step() const { return step_; }
  InvalidReason reason() const { return reason_; }

private:
  std::size_t step_;
  InvalidReason reason_;
};

/// Checks `fs` against `state` under `mode`; returns the first reason it is
/// not admissible.
std::optional<std::pair<InvalidReason, std::string>>
check_firing_set(const NetDef &net, const ExecState &state, const FiringSet &fs,
                 const SemanticsMode &mode);

/// Replays a firing sequence from `m0`. Throws InvalidFiringSet on the first
/// inadmissible step. `sigma` must be non-empty.
Trajectory replay(const NetDef &net, const Marking &m0, const std::vector<FiringSet> &sigma,
                  const SemanticsMode &mode);

} // namespace cpn
