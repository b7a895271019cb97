#pragma once

#include "cpnasp/semantics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cpn {

/// 1-based line/column plus byte offsets into the source text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan &, const SourceSpan &) = default;
};

/// Way-point restriction on trajectories.
struct Constraint {
  enum class Kind { Fires, NotFires, HoldsAtLeast, HoldsExactly };

  Kind kind = Kind::Fires;
  std::string transition;
  std::string place;
  std::string color;
  Count count = 0;
  std::size_t at_step = 0;
  SourceSpan span;

  bool satisfied_by(const Marking &m) const;
  bool satisfied_by(const FiringSet &fs) const;
  bool is_holds() const { return kind == Kind::HoldsAtLeast || kind == Kind::HoldsExactly; }
  std::string to_string() const;

  friend bool operator==(const Constraint &a, const Constraint &b) {
    return a.kind == b.kind && a.transition == b.transition && a.place == b.place &&
           a.color == b.color && a.count == b.count && a.at_step == b.at_step;
  }
};

struct EnumerateOptions {
  std::size_t horizon = 0;
  SemanticsMode mode;
  std::vector<Constraint> constraints;
  std::optional<std::size_t> limit;
  /// Called with the running count after each yielded trajectory.
  std::function<void(std::size_t)> progress;
};

/// Throws std::invalid_argument if a constraint names an undeclared
/// identifier or a step beyond the horizon.
void check_constraints(const NetDef &net, const std::vector<Constraint> &cs,
                       std::size_t horizon);

/// Depth-first enumeration of every trajectory of length horizon + 1 admitted
/// by the semantics and constraints, in lexicographic firing-set order. The
/// visitor returns false to stop early. Returns the number visited.
std::size_t enumerate(const NetDef &net, const Marking &m0, const EnumerateOptions &opts,
                      const std::function<bool(const Trajectory &)> &visit);

std::vector<Trajectory> enumerate_all(const NetDef &net, const Marking &m0,
                                      const EnumerateOptions &opts);

/// Number of trajectories enumerate() would yield (ignores opts.limit).
/// Memoizes on (step, state), so it stays cheap when the tree is wide.
std::uint64_t count_trajectories(const NetDef &net, const Marking &m0,
                                 const EnumerateOptions &opts);

/// Distinct execution states reachable at each step 0..horizon along
/// constraint-satisfying prefixes. Index i holds the states at step i.
std::vector<std::vector<ExecState>> reachable_states(const NetDef &net, const Marking &m0,
                                                     const EnumerateOptions &opts);

} // namespace cpn
