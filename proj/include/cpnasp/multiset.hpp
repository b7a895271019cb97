#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace cpn {

using Count = std::uint64_t;

/// Multiset of colored tokens. Used for arc weights, place markings and
/// consumption accounting. Entries with a zero count are never stored, so
/// structural equality is multiset equality.
class ColorMultiset {
public:
  using Entries = std::map<std::string, Count>;

  ColorMultiset() = default;
  ColorMultiset(std::initializer_list<std::pair<const std::string, Count>> init);

  /// Multiplicity of `color`; absent colors count as 0.
  Count count(const std::string &color) const;
  void set(const std::string &color, Count n);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Count total() const;
  const Entries &entries() const { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  ColorMultiset &operator+=(const ColorMultiset &other);

  /// Renders as "c1/n1,c2/n2" in lexicographic color order; empty renders "".
  std::string to_string() const;

  friend bool operator==(const ColorMultiset &, const ColorMultiset &) = default;
  friend auto operator<=>(const ColorMultiset &a, const ColorMultiset &b) {
    return a.entries_ <=> b.entries_;
  }

private:
  Entries entries_;
};

class MultisetUnderflow : public std::runtime_error {
public:
  MultisetUnderflow(std::string color, Count have, Count take);
  const std::string &color() const { return color_; }

private:
  std::string color_;
};

enum class Relation { Lt, Gt, Le, Ge, Eq, Ne };

/// a <= b pointwise.
bool ms_leq(const ColorMultiset &a, const ColorMultiset &b);
ColorMultiset ms_add(const ColorMultiset &a, const ColorMultiset &b);
/// Pointwise a - b. Throws MultisetUnderflow naming the first color (in
/// lexicographic order) where b exceeds a.
ColorMultiset ms_sub(const ColorMultiset &a, const ColorMultiset &b);
/// True iff every color in `domain` satisfies count(d) `rel` n.
bool ms_scalar_cmp(const ColorMultiset &a, const std::set<std::string> &domain,
                   Count n, Relation rel);

} // namespace cpn
