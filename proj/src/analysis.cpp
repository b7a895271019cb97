#include "cpnasp/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cpn {

Rational Rational::of(std::uint64_t n, std::uint64_t d) {
  if (d == 0)
    throw std::domain_error("rational with zero denominator");
  std::uint64_t g = std::gcd(n, d);
  if (g == 0)
    g = 1;
  return {n / g, d / g};
}

std::string Rational::to_string() const {
  if (den == 1)
    return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  using U = unsigned __int128;
  return static_cast<U>(a.num) * b.den <=> static_cast<U>(b.num) * a.den;
}

TimeSeries timeseries(const NetDef &net, const Trajectory &traj, const std::string &place,
                      const std::string &color) {
  if (!net.has_place(place))
    throw std::invalid_argument("unknown place '" + place + "'");
  if (!net.has_color(color))
    throw std::invalid_argument("unknown color '" + color + "'");
  TimeSeries ts{place, color, {}};
  for (std::size_t k = 0; k < traj.markings.size(); ++k)
    ts.samples.emplace_back(k, traj.markings[k].count(place, color));
  return ts;
}

Rational efficiency(const Trajectory &traj, const std::string &place, const std::string &color,
                    std::size_t ts) {
  if (ts == 0 || ts >= traj.markings.size())
    throw std::out_of_range("efficiency step " + std::to_string(ts) + " outside 1.." +
                            std::to_string(traj.horizon()));
  return Rational::of(traj.markings[ts].count(place, color), ts);
}

std::string export_csv(const std::vector<TimeSeries> &series,
                       const std::vector<std::string> &labels) {
  std::ostringstream os;
  os << "step";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto &s = series[i];
    if (s.samples.size() != series.front().samples.size())
      throw std::invalid_argument("time series cover different step ranges");
    for (std::size_t j = 0; j < s.samples.size(); ++j)
      if (s.samples[j].first != series.front().samples[j].first)
        throw std::invalid_argument("time series cover different step ranges");
    os << ',' << (i < labels.size() ? labels[i] : s.place + "." + s.color);
  }
  os << '\n';
  if (series.empty())
    return os.str();
  for (std::size_t j = 0; j < series.front().samples.size(); ++j) {
    os << series.front().samples[j].first;
    for (const auto &s : series)
      os << ',' << s.samples[j].second;
    os << '\n';
  }
  return os.str();
}

std::vector<EfficiencyRange> efficiency_sweep(const NetDef &net, const Marking &m0,
                                              const EnumerateOptions &opts,
                                              const std::string &place, const std::string &color) {
  if (!net.has_place(place))
    throw std::invalid_argument("unknown place '" + place + "'");
  if (!net.has_color(color))
    throw std::invalid_argument("unknown color '" + color + "'");
  auto layers = reachable_states(net, m0, opts);
  std::vector<EfficiencyRange> out;
  for (std::size_t ts = 1; ts < layers.size(); ++ts) {
    if (layers[ts].empty())
      continue;
    EfficiencyRange r;
    r.ts = ts;
    r.states = layers[ts].size();
    bool first = true;
    for (const auto &s : layers[ts]) {
      Rational e = Rational::of(s.marking.count(place, color), ts);
      if (first || e < r.min)
        r.min = e;
      if (first || e > r.max)
        r.max = e;
      first = false;
      if (std::find(r.values.begin(), r.values.end(), e) == r.values.end())
        r.values.push_back(e);
    }
    std::sort(r.values.begin(), r.values.end());
    out.push_back(r);
  }
  return out;
}

} // namespace cpn
