#include "cpnasp/trajectory_io.hpp"

#include <json.hpp>

#include <sstream>

namespace cpn {

std::string fires_atom(const NetDef &net, const FiringSet &fs, std::size_t step) {
  if (fs.empty())
    return {};
  std::ostringstream os;
  os << "fires(";
  bool first = true;
  for (const auto &t : net.transitions) {
    if (!fs.count(t.id))
      continue;
    os << (first ? "" : ";") << t.id;
    first = false;
  }
  os << ',' << step << ')';
  return os.str();
}

std::string holds_atoms(const Marking &m, std::size_t step) {
  std::ostringstream os;
  bool first = true;
  for (const auto &[p, ms] : m)
    for (const auto &[c, n] : ms) {
      os << (first ? "" : " ") << "holds(" << p << ',' << n << ',' << c << ',' << step << ')';
      first = false;
    }
  return os.str();
}

std::string render_atoms(const NetDef &net, const Trajectory &traj, std::size_t index) {
  std::ostringstream os;
  os << "Answer: " << index + 1 << '\n';
  for (std::size_t k = 0; k < traj.firings.size(); ++k) {
    std::string h = holds_atoms(traj.markings[k], k);
    std::string f = fires_atom(net, traj.firings[k], k);
    os << h << (h.empty() || f.empty() ? "" : " ") << f << '\n';
  }
  return os.str();
}

std::string render_json(const NetDef &net, const Trajectory &traj, std::size_t index) {
  nlohmann::ordered_json j;
  j["index"] = index;
  j["horizon"] = traj.horizon();
  auto steps = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < traj.firings.size(); ++k) {
    nlohmann::ordered_json s;
    s["step"] = k;
    auto marking = nlohmann::ordered_json::object();
    for (const auto &[p, ms] : traj.markings[k])
      for (const auto &[c, n] : ms)
        marking[p][c] = n;
    s["marking"] = marking;
    auto fires = nlohmann::ordered_json::array();
    for (const auto &t : net.transitions)
      if (traj.firings[k].count(t.id))
        fires.push_back(t.id);
    s["fires"] = fires;
    steps.push_back(s);
  }
  j["steps"] = steps;
  return j.dump();
}

} // namespace cpn
