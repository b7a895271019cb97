#include "cpnasp/asp.hpp"
#include "cpnasp/trajectory_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace cpn {

namespace {

struct Atom {
  std::string name;
  std::vector<std::string> args;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

// Splits a line into atom texts at parenthesis depth 0.
std::vector<std::string> split_atoms(const std::string &line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0)
        throw AnswerSetError("MALFORMED_ATOM", "unbalanced ')' on line " + std::to_string(lineno),
                             lineno);
    }
    if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty())
        out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0)
    throw AnswerSetError("MALFORMED_ATOM", "unbalanced '(' on line " + std::to_string(lineno),
                         lineno);
  if (!cur.empty())
    out.push_back(std::move(cur));
  return out;
}

// Parses one atom, expanding argument pools into several atoms.
std::vector<Atom> parse_atom(const std::string &text, std::size_t lineno) {
  auto bad = [&]() -> AnswerSetError {
    return AnswerSetError("MALFORMED_ATOM",
                          "malformed atom '" + text + "' on line " + std::to_string(lineno),
                          lineno);
  };
  if (text.empty() || !std::islower(static_cast<unsigned char>(text[0])))
    throw bad();
  auto open = text.find('(');
  Atom base;
  if (open == std::string::npos) {
    for (char c : text)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw bad();
    base.name = text;
    return {base};
  }
  if (text.back() != ')')
    throw bad();
  base.name = text.substr(0, open);
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::vector<std::string>> alts;
  std::string cur;
  int depth = 0;
  std::vector<std::string> pooled;
  for (char c : inner) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (depth == 0 && (c == ',' || c == ';')) {
      if (cur.empty())
        throw bad();
      pooled.push_back(cur);
      cur.clear();
      if (c == ',') {
        alts.push_back(std::move(pooled));
        pooled.clear();
      }
      continue;
    }
    cur += c;
  }
  if (cur.empty())
    throw bad();
  pooled.push_back(cur);
  alts.push_back(std::move(pooled));

  std::vector<Atom> out{base};
  for (const auto &choices : alts) {
    std::vector<Atom> next;
    for (const auto &a : out)
      for (const auto &ch : choices) {
        Atom b = a;
        b.args.push_back(ch);
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

std::size_t to_number(const std::string &s, std::size_t lineno, const std::string &atom) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw AnswerSetError("MALFORMED_ATOM",
                         "expected a number in '" + atom + "' on line " + std::to_string(lineno),
                         lineno);
  return v;
}

struct RawAnswer {
  std::vector<std::string> atoms;
  std::size_t line = 0;
};

bool is_answer_header(const std::string &line) { return line.rfind("Answer:", 0) == 0; }

std::vector<RawAnswer> split_answers(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream is{std::string(text)};
  for (std::string l; std::getline(is, l);) {
    if (!l.empty() && l.back() == '\r')
      l.pop_back();
    lines.push_back(l);
  }
  bool solver_style =
      std::any_of(lines.begin(), lines.end(), [](const std::string &l) { return is_answer_header(l); });

  std::vector<RawAnswer> out;
  bool open = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string l = trim(lines[i]);
    std::size_t lineno = i + 1;
    if (solver_style) {
      if (is_answer_header(l)) {
        out.push_back({{}, lineno});
        open = true;
      } else if (open && !l.empty() && std::islower(static_cast<unsigned char>(l[0]))) {
        for (auto &a : split_atoms(l, lineno))
          out.back().atoms.push_back(std::move(a));
      } else {
        open = false;
      }
      continue;
    }
    if (l.empty()) {
      open = false;
      continue;
    }
    if (l[0] == '%' || std::isupper(static_cast<unsigned char>(l[0])))
      continue;
    if (!open)
      out.push_back({{}, lineno});
    open = true;
    for (auto &a : split_atoms(l, lineno))
      out.back().atoms.push_back(std::move(a));
  }
  return out;
}

} // namespace

std::vector<Trajectory> parse_answer_sets(std::string_view solver_output, const NetDef &net,
                                          std::size_t horizon) {
  std::vector<Trajectory> out;
  for (const auto &ans : split_answers(solver_output)) {
    Trajectory traj;
    traj.markings.resize(horizon + 1);
    traj.firings.resize(horizon + 1);
    std::set<std::size_t> mentioned, holds_steps;
    bool zero_holds = false;

    for (const auto &text : ans.atoms) {
      for (const auto &atom : parse_atom(text, ans.line)) {
        auto check_step = [&](const std::string &s) {
          std::size_t k = to_number(s, ans.line, text);
          if (k > horizon)
            throw AnswerSetError("STEP_OUT_OF_RANGE",
                                 "atom '" + text + "' is beyond horizon " + std::to_string(horizon),
                                 ans.line);
          mentioned.insert(k);
          return k;
        };
        if (atom.name == "fires" && atom.args.size() == 2) {
          if (!net.has_transition(atom.args[0]))
            throw AnswerSetError("UNKNOWN_TRANSITION",
                                 "unknown transition '" + atom.args[0] + "' in '" + text + "'",
                                 ans.line);
          traj.firings[check_step(atom.args[1])].insert(atom.args[0]);
        } else if (atom.name == "holds" && atom.args.size() == 4) {
          const auto &p = atom.args[0];
          const auto &c = atom.args[2];
          if (!net.has_place(p))
            throw AnswerSetError("UNKNOWN_PLACE", "unknown place '" + p + "' in '" + text + "'",
                                 ans.line);
          if (!net.has_color(c))
            throw AnswerSetError("UNKNOWN_COLOR", "unknown color '" + c + "' in '" + text + "'",
                                 ans.line);
          Count n = to_number(atom.args[1], ans.line, text);
          std::size_t k = check_step(atom.args[3]);
          holds_steps.insert(k);
          if (n == 0) {
            zero_holds = true;
            continue;
          }
          ColorMultiset ms = traj.markings[k].at(p);
          ms.set(c, n);
          traj.markings[k].set(p, std::move(ms));
        }
      }
    }

    // Full solver output lists zero-count holds, so every step must appear;
    // abbreviated output may omit steps only at the start.
    if (zero_holds) {
      for (std::size_t k = 0; k <= horizon; ++k)
        if (!holds_steps.count(k))
          throw AnswerSetError("MISSING_STEPS",
                               "answer set has no holds atoms for step " + std::to_string(k),
                               ans.line);
    } else if (!mentioned.empty()) {
      for (std::size_t k = 1; k < *mentioned.rbegin(); ++k)
        if (!mentioned.count(k))
          throw AnswerSetError("MISSING_STEPS",
                               "answer set has no atoms for step " + std::to_string(k), ans.line);
    }
    out.push_back(std::move(traj));
  }
  return out;
}

CrossReport cross_validate(const std::vector<Trajectory> &native,
                           const std::vector<Trajectory> &external) {
  std::set<Trajectory> a(native.begin(), native.end());
  std::set<Trajectory> b(external.begin(), external.end());
  CrossReport r;
  for (const auto &t : a) {
    if (b.count(t))
      ++r.matched;
    else
      r.native_only.push_back(t);
  }
  for (const auto &t : b)
    if (!a.count(t))
      r.external_only.push_back(t);
  return r;
}

std::string render_report(const NetDef &net, const CrossReport &r) {
  std::ostringstream os;
  os << "matched: " << r.matched << '\n'
     << "native-only: " << r.native_only.size() << '\n'
     << "external-only: " << r.external_only.size() << '\n';
  for (std::size_t i = 0; i < r.native_only.size(); ++i)
    os << "--- native-only\n" << render_atoms(net, r.native_only[i], i);
  for (std::size_t i = 0; i < r.external_only.size(); ++i)
    os << "--- external-only\n" << render_atoms(net, r.external_only[i], i);
  return os.str();
}

} // namespace cpn
