#pragma once

#include "cpnasp/enumerator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cpn {

/// Exact non-negative rational, always reduced.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational of(std::uint64_t n, std::uint64_t d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);
};

struct TimeSeries {
  std::string place;
  std::string color;
  std::vector<std::pair<std::size_t, Count>> samples;
};

/// Count of `color` at `place` for every step of the trajectory. Throws
/// std::invalid_argument for undeclared identifiers.
TimeSeries timeseries(const NetDef &net, const Trajectory &traj, const std::string &place,
                      const std::string &color);

/// Tokens of `color` at `place` at step `ts`, divided by `ts`.
/// Requires 1 <= ts <= horizon; throws std::out_of_range otherwise.
Rational efficiency(const Trajectory &traj, const std::string &place, const std::string &color,
                    std::size_t ts);

/// `step,<place>.<color>,...` header then one row per step. Throws
/// std::invalid_argument when the series do not share the same steps. A
/// `labels` entry, when given, replaces the default column name.
std::string export_csv(const std::vector<TimeSeries> &series,
                       const std::vector<std::string> &labels = {});

/// Range of an efficiency over every reachable state at a step.
struct EfficiencyRange {
  std::size_t ts = 0;
  Rational min;
  Rational max;
  std::size_t states = 0;
  /// Every distinct value observed at this step.
  std::vector<Rational> values;
};

/// For ts in 1..opts.horizon, the min/max of count(place, color)/ts over all
/// states reachable at step ts, i.e. across every branch of the enumeration.
std::vector<EfficiencyRange> efficiency_sweep(const NetDef &net, const Marking &m0,
                                              const EnumerateOptions &opts,
                                              const std::string &place, const std::string &color);

} // namespace cpn
