#include "cpnasp/multiset.hpp"

#include <sstream>

namespace cpn {

ColorMultiset::ColorMultiset(
    std::initializer_list<std::pair<const std::string, Count>> init) {
  for (const auto &[c, n] : init)
    set(c, count(c) + n);
}

Count ColorMultiset::count(const std::string &color) const {
  auto it = entries_.find(color);
  return it == entries_.end() ? 0 : it->second;
}

void ColorMultiset::set(const std::string &color, Count n) {
  if (n == 0)
    entries_.erase(color);
  else
    entries_[color] = n;
}

Count ColorMultiset::total() const {
  Count sum = 0;
  for (const auto &[c, n] : entries_)
    sum += n;
  return sum;
}

ColorMultiset &ColorMultiset::operator+=(const ColorMultiset &other) {
  for (const auto &[c, n] : other.entries_)
    entries_[c] += n;
  return *this;
}

std::string ColorMultiset::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto &[c, n] : entries_) {
    if (!first)
      os << ',';
    first = false;
    os << c << '/' << n;
  }
  return os.str();
}

MultisetUnderflow::MultisetUnderflow(std::string color, Count have, Count take)
    : std::runtime_error("multiset underflow on color '" + color + "': " +
                         std::to_string(have) + " - " + std::to_string(take)),
      color_(std::move(color)) {}

bool ms_leq(const ColorMultiset &a, const ColorMultiset &b) {
  for (const auto &[c, n] : a)
    if (n > b.count(c))
      return false;
  return true;
}

ColorMultiset ms_add(const ColorMultiset &a, const ColorMultiset &b) {
  ColorMultiset r = a;
  r += b;
  return r;
}

ColorMultiset ms_sub(const ColorMultiset &a, const ColorMultiset &b) {
  ColorMultiset r = a;
  for (const auto &[c, n] : b) {
    Count have = a.count(c);
    if (n > have)
      throw MultisetUnderflow(c, have, n);
    r.set(c, have - n);
  }
  return r;
}

bool ms_scalar_cmp(const ColorMultiset &a, const std::set<std::string> &domain,
                   Count n, Relation rel) {
  for (const auto &d : domain) {
    Count m = a.count(d);
    bool ok = false;
    switch (rel) {
    case Relation::Lt: ok = m < n; break;
    case Relation::Gt: ok = m > n; break;
    case Relation::Le: ok = m <= n; break;
    case Relation::Ge: ok = m >= n; break;
    case Relation::Eq: ok = m == n; break;
    case Relation::Ne: ok = m != n; break;
    }
    if (!ok)
      return false;
  }
  return true;
}

} // namespace cpn
