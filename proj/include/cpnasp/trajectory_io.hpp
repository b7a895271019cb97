#pragma once

#include "cpnasp/semantics.hpp"

#include <string>

namespace cpn {

/// `fires(t1;t10;t12,3)` for a non-empty firing set, transitions in net
/// declaration order; empty string for the empty set.
std::string fires_atom(const NetDef &net, const FiringSet &fs, std::size_t step);

/// `holds(p,n,c,k)` atoms for every nonzero entry, place then color
/// lexicographic, space separated.
std::string holds_atoms(const Marking &m, std::size_t step);

/// Answer-set style text: an `Answer: N` header (N is 1-based) followed by one
/// line per step holding that step's marking atoms and then its fires atom.
std::string render_atoms(const NetDef &net, const Trajectory &traj, std::size_t index);

/// One JSON object (single line) with explicit per-step markings and firings.
std::string render_json(const NetDef &net, const Trajectory &traj, std::size_t index);

} // namespace cpn
