#include "cpnasp/netdsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace cpn {

std::string Diagnostic::to_string(std::string_view filename) const {
  std::ostringstream os;
  if (!filename.empty())
    os << filename << ':';
  os << span.line << ':' << span.column << ": "
     << (severity == Severity::Error ? "error" : "warning") << " [" << code << "] "
     << message;
  return os.str();
}

bool has_errors(const std::vector<Diagnostic> &diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic &d) { return d.severity == Severity::Error; });
}

namespace {

enum class Tok { Ident, Int, Punct, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  Lexer(std::string_view src, std::vector<Diagnostic> &diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.span = here();
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        if (std::islower(static_cast<unsigned char>(c))) {
          t.kind = Tok::Ident;
        } else {
          t.kind = Tok::Bad;
          diag(t, "BAD_IDENT",
               "identifier '" + t.text + "' must start with a lowercase letter");
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
        t.kind = Tok::Int;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '>' && peek(1) == '=') {
        advance();
        advance();
        t.kind = Tok::Punct;
        t.text = ">=";
      } else if (c == '=' && peek(1) == '=') {
        advance();
        advance();
        t.kind = Tok::Punct;
        t.text = "=";
      } else if (std::string_view("{};:,/()=").find(c) != std::string_view::npos) {
        advance();
        t.kind = Tok::Punct;
        t.text = std::string(1, c);
      } else {
        advance();
        t.kind = Tok::Bad;
        t.text = std::string(1, c);
        diag(t, "SYNTAX", "unexpected character '" + t.text + "'");
      }
      t.span.end = pos_;
      out.push_back(std::move(t));
    }
  }

private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  SourceSpan here() const { return {line_, col_, pos_, pos_}; }
  void diag(const Token &t, std::string code, std::string msg) {
    SourceSpan s = t.span;
    s.end = pos_;
    diags_.push_back({std::move(code), Severity::Error, std::move(msg), s});
  }

  std::string_view src_;
  std::vector<Diagnostic> &diags_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

struct SyntaxError {};

struct WeightItem {
  std::string color;
  Count count = 0;
  SourceSpan span;
};

struct Ref {
  std::string name;
  SourceSpan span;
};

struct ArcDecl {
  std::string kind; // in, out, read, inhibit, reset
  Ref place;
  std::vector<WeightItem> weight;
};

struct TransitionDecl {
  Ref id;
  unsigned priority = 0;
  unsigned duration = 1;
  SourceSpan duration_span;
  std::vector<ArcDecl> arcs;
};

struct MarkingDecl {
  Ref place;
  std::vector<WeightItem> weight;
};

class ParserBase {
protected:
  ParserBase(std::string_view text, std::vector<Diagnostic> &diags) : diags_(diags) {
    toks_ = Lexer(text, diags).run();
  }

  const Token &cur() const { return toks_[i_]; }
  bool at_end() const { return cur().kind == Tok::End; }
  bool is_punct(const char *p) const { return cur().kind == Tok::Punct && cur().text == p; }
  bool is_word(const char *w) const { return cur().kind == Tok::Ident && cur().text == w; }
  const Token &next() {
    const Token &t = toks_[i_];
    if (!at_end())
      ++i_;
    return t;
  }

  [[noreturn]] void fail(const std::string &expected) {
    std::string got = at_end() ? "end of input" : "'" + cur().text + "'";
    error("SYNTAX", "expected " + expected + ", found " + got, cur().span);
    throw SyntaxError{};
  }
  void error(std::string code, std::string msg, SourceSpan span) {
    diags_.push_back({std::move(code), Severity::Error, std::move(msg), span});
  }
  void warning(std::string code, std::string msg, SourceSpan span) {
    diags_.push_back({std::move(code), Severity::Warning, std::move(msg), span});
  }

  void expect(const char *p) {
    if (!is_punct(p))
      fail(std::string("'") + p + "'");
    next();
  }
  void expect_word(const char *w) {
    if (!is_word(w))
      fail(std::string("'") + w + "'");
    next();
  }
  Ref ident(const char *what) {
    if (cur().kind != Tok::Ident)
      fail(what);
    const Token &t = next();
    return {t.text, t.span};
  }
  Count integer(const char *what) {
    if (cur().kind != Tok::Int)
      fail(what);
    const Token &t = next();
    Count v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) {
      error("BAD_INT", "integer '" + t.text + "' is out of range", t.span);
      return 0;
    }
    return v;
  }
  unsigned small_integer(const char *what) {
    SourceSpan s = cur().span;
    Count v = integer(what);
    if (v > 1000000) {
      error("BAD_INT", std::string(what) + " is too large", s);
      return 1;
    }
    return static_cast<unsigned>(v);
  }

  std::vector<WeightItem> weight_list() {
    std::vector<WeightItem> items;
    do {
      if (!items.empty())
        next();
      WeightItem w;
      w.span = cur().span;
      w.color = ident("color name").name;
      expect("/");
      w.count = integer("token count");
      w.span.end = toks_[i_ - 1].span.end;
      items.push_back(std::move(w));
    } while (is_punct(","));
    return items;
  }

  // Skips to just past the next ';' at nesting depth 0, or stops before a '}'
  // that closes the current block.
  void recover() {
    int depth = 0;
    while (!at_end()) {
      if (is_punct("{")) {
        ++depth;
      } else if (is_punct("}")) {
        if (depth == 0)
          return;
        --depth;
        if (depth == 0) {
          next();
          return;
        }
      } else if (is_punct(";") && depth == 0) {
        next();
        return;
      }
      next();
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<Diagnostic> &diags_;
};

class NetParser : ParserBase {
public:
  NetParser(std::string_view text, std::vector<Diagnostic> &diags) : ParserBase(text, diags) {}

  void run() {
    try {
      while (cur().kind == Tok::Bad)
        next();
      expect_word("net");
      name_ = ident("net name");
      expect("{");
    } catch (SyntaxError &) {
      return;
    }
    while (!at_end() && !is_punct("}")) {
      try {
        decl();
      } catch (SyntaxError &) {
        recover();
      }
    }
    if (at_end()) {
      error("SYNTAX", "missing '}' closing net '" + name_.name + "'", cur().span);
      return;
    }
    next();
    if (!at_end())
      error("SYNTAX", "unexpected '" + cur().text + "' after end of net", cur().span);
  }

  Ref name_;
  std::vector<Ref> colors_, places_;
  std::vector<TransitionDecl> transitions_;
  std::vector<MarkingDecl> markings_;

private:
  void decl() {
    if (is_word("colors") || is_word("places")) {
      bool colors = cur().text == "colors";
      next();
      auto &dst = colors ? colors_ : places_;
      dst.push_back(ident(colors ? "color name" : "place name"));
      while (is_punct(",")) {
        next();
        dst.push_back(ident(colors ? "color name" : "place name"));
      }
      expect(";");
    } else if (is_word("transition")) {
      next();
      transition();
    } else if (is_word("marking")) {
      next();
      MarkingDecl m;
      m.place = ident("place name");
      expect(":");
      m.weight = weight_list();
      expect(";");
      markings_.push_back(std::move(m));
    } else {
      fail("'colors', 'places', 'transition' or 'marking'");
    }
  }

  void transition() {
    TransitionDecl t;
    t.id = ident("transition name");
    if (is_word("pri")) {
      next();
      t.priority = small_integer("priority");
    }
    t.duration_span = t.id.span;
    if (is_word("dur")) {
      next();
      t.duration_span = cur().span;
      t.duration = small_integer("duration");
    }
    expect("{");
    while (!at_end() && !is_punct("}")) {
      try {
        arc(t);
      } catch (SyntaxError &) {
        recover();
      }
    }
    expect("}");
    transitions_.push_back(std::move(t));
  }

  void arc(TransitionDecl &t) {
    if (is_word("in") || is_word("out") || is_word("read")) {
      ArcDecl a;
      a.kind = next().text;
      a.place = ident("place name");
      expect(":");
      a.weight = weight_list();
      expect(";");
      t.arcs.push_back(std::move(a));
    } else if (is_word("inhibit") || is_word("reset")) {
      ArcDecl a;
      a.kind = next().text;
      a.place = ident("place name");
      expect(";");
      t.arcs.push_back(std::move(a));
    } else {
      fail("'in', 'out', 'read', 'inhibit' or 'reset'");
    }
  }
};

class ConstraintParser : ParserBase {
public:
  ConstraintParser(std::string_view text, std::vector<Diagnostic> &diags)
      : ParserBase(text, diags) {}

  std::vector<Constraint> run() {
    std::vector<Constraint> out;
    while (!at_end()) {
      try {
        out.push_back(one());
      } catch (SyntaxError &) {
        recover();
        if (is_punct("}"))
          next();
      }
    }
    return out;
  }

private:
  Constraint one() {
    Constraint c;
    c.span = cur().span;
    if (is_word("not") || is_word("fires")) {
      c.kind = Constraint::Kind::Fires;
      if (is_word("not")) {
        next();
        c.kind = Constraint::Kind::NotFires;
      }
      expect_word("fires");
      expect("(");
      c.transition = ident("transition name").name;
      expect(")");
    } else if (is_word("holds")) {
      next();
      expect("(");
      c.place = ident("place name").name;
      expect(",");
      c.color = ident("color name").name;
      expect(")");
      if (is_punct(">=")) {
        c.kind = Constraint::Kind::HoldsAtLeast;
      } else if (is_punct("=")) {
        c.kind = Constraint::Kind::HoldsExactly;
      } else {
        fail("'>=' or '='");
      }
      next();
      c.count = integer("token count");
    } else {
      fail("'fires', 'not fires' or 'holds'");
    }
    expect_word("at");
    c.at_step = static_cast<std::size_t>(integer("time step"));
    expect(";");
    c.span.end = toks_[i_ - 1].span.end;
    return c;
  }
};

ColorMultiset build_weight(const std::vector<WeightItem> &items, const std::set<std::string> &colors,
                           const std::string &ctx, std::vector<Diagnostic> &diags) {
  ColorMultiset w;
  std::set<std::string> seen;
  for (const auto &it : items) {
    if (!colors.count(it.color))
      diags.push_back({"UNKNOWN_COLOR", Severity::Error,
                       ctx + " uses undeclared color '" + it.color + "'", it.span});
    if (it.count == 0)
      diags.push_back({"ZERO_WEIGHT", Severity::Error,
                       ctx + " has zero count for color '" + it.color + "'", it.span});
    if (!seen.insert(it.color).second)
      diags.push_back({"DUPLICATE_COLOR", Severity::Warning,
                       ctx + " lists color '" + it.color + "' more than once; counts are summed",
                       it.span});
    w.set(it.color, w.count(it.color) + it.count);
  }
  return w;
}

} // namespace

ParsedNet parse_net(std::string_view text) {
  ParsedNet out;
  auto &diags = out.diagnostics;
  NetParser p(text, diags);
  p.run();

  NetDef net;
  net.name = p.name_.name.empty() ? "net" : p.name_.name;

  auto declare = [&](const std::vector<Ref> &refs, std::vector<std::string> &dst,
                     std::set<std::string> &seen, const char *what) {
    for (const auto &r : refs) {
      if (!seen.insert(r.name).second) {
        diags.push_back({"DUPLICATE_DECL", Severity::Error,
                         std::string(what) + " '" + r.name + "' is declared more than once",
                         r.span});
        continue;
      }
      dst.push_back(r.name);
    }
  };
  std::set<std::string> colors, places, transitions;
  declare(p.colors_, net.colors, colors, "color");
  declare(p.places_, net.places, places, "place");

  for (const auto &td : p.transitions_) {
    if (!transitions.insert(td.id.name).second) {
      diags.push_back({"DUPLICATE_DECL", Severity::Error,
                       "transition '" + td.id.name + "' is declared more than once", td.id.span});
      continue;
    }
    if (places.count(td.id.name))
      diags.push_back({"NAME_CLASH", Severity::Error,
                       "'" + td.id.name + "' is both a place and a transition", td.id.span});
    if (td.duration == 0)
      diags.push_back({"BAD_DURATION", Severity::Error,
                       "transition '" + td.id.name + "' has duration 0", td.duration_span});
    net.transitions.push_back({td.id.name, td.priority, td.duration});

    for (const auto &a : td.arcs) {
      const std::string &pl = a.place.name;
      std::string ctx = a.kind + " arc " + pl + " of " + td.id.name;
      if (!places.count(pl))
        diags.push_back({"UNKNOWN_PLACE", Severity::Error,
                         ctx + " references undeclared place '" + pl + "'", a.place.span});
      if (a.kind == "inhibit" || a.kind == "reset") {
        auto &set = (a.kind == "reset" ? net.reset_arcs : net.inhibit_arcs)[td.id.name];
        if (!set.insert(pl).second)
          diags.push_back({"DUPLICATE_ARC", Severity::Warning,
                           "repeated " + a.kind + " arc from '" + pl + "'", a.place.span});
        continue;
      }
      ColorMultiset w = build_weight(a.weight, colors, ctx, diags);
      std::map<std::pair<std::string, std::string>, ColorMultiset> *arcs =
          a.kind == "in" ? &net.input_arcs : a.kind == "out" ? &net.output_arcs : &net.read_arcs;
      auto key = a.kind == "out" ? std::pair{td.id.name, pl} : std::pair{pl, td.id.name};
      auto [it, fresh] = arcs->try_emplace(key);
      if (!fresh)
        diags.push_back({"DUPLICATE_ARC", Severity::Warning,
                         "repeated " + a.kind + " arc for '" + pl + "' merged by multiset sum",
                         a.place.span});
      it->second += w;
    }
  }

  std::set<std::string> marked;
  for (const auto &m : p.markings_) {
    if (!places.count(m.place.name))
      diags.push_back({"UNKNOWN_PLACE", Severity::Error,
                       "marking of undeclared place '" + m.place.name + "'", m.place.span});
    if (!marked.insert(m.place.name).second)
      diags.push_back({"DUPLICATE_DECL", Severity::Error,
                       "place '" + m.place.name + "' has more than one marking", m.place.span});
    out.initial.set(m.place.name,
                    build_weight(m.weight, colors, "marking of " + m.place.name, diags));
  }

  // Anything structural the parser did not already report.
  for (const auto &v : validate(net)) {
    bool already = std::any_of(diags.begin(), diags.end(),
                               [&](const Diagnostic &d) { return d.code == v.code; });
    if (!already && v.severity == Severity::Error)
      diags.push_back({v.code, v.severity, v.message, p.name_.span});
    else if (v.severity == Severity::Warning)
      diags.push_back({v.code, v.severity, v.message, p.name_.span});
  }

  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic &a, const Diagnostic &b) {
    return a.span.begin < b.span.begin;
  });
  if (!has_errors(diags))
    out.net = std::move(net);
  return out;
}

ParsedConstraints parse_constraints(std::string_view text) {
  ParsedConstraints out;
  ConstraintParser p(text, out.diagnostics);
  out.constraints = p.run();
  return out;
}

std::vector<Diagnostic> resolve_constraints(const NetDef &net, const std::vector<Constraint> &cs,
                                            std::size_t horizon) {
  std::vector<Diagnostic> out;
  for (const auto &c : cs) {
    if (c.at_step > horizon)
      out.push_back({"STEP_OUT_OF_RANGE", Severity::Error,
                     "step " + std::to_string(c.at_step) + " is beyond horizon " +
                         std::to_string(horizon),
                     c.span});
    if (c.is_holds()) {
      if (!net.has_place(c.place))
        out.push_back({"UNKNOWN_PLACE", Severity::Error, "unknown place '" + c.place + "'", c.span});
      if (!net.has_color(c.color))
        out.push_back({"UNKNOWN_COLOR", Severity::Error, "unknown color '" + c.color + "'", c.span});
    } else if (!net.has_transition(c.transition)) {
      out.push_back({"UNKNOWN_TRANSITION", Severity::Error,
                     "unknown transition '" + c.transition + "'", c.span});
    }
  }
  return out;
}

std::string render_net(const NetDef &net, const Marking &m0) {
  std::ostringstream os;
  auto list = [&](const std::vector<std::string> &v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      os << (i ? ", " : "") << v[i];
  };
  os << "net " << net.name << " {\n";
  if (!net.colors.empty()) {
    os << "  colors ";
    list(net.colors);
    os << ";\n";
  }
  if (!net.places.empty()) {
    os << "  places ";
    list(net.places);
    os << ";\n";
  }
  for (const auto &t : net.transitions) {
    os << "  transition " << t.id;
    if (t.priority != 0)
      os << " pri " << t.priority;
    if (t.duration != 1)
      os << " dur " << t.duration;
    os << " {\n";
    for (const auto &p : net.places)
      if (auto it = net.input_arcs.find({p, t.id}); it != net.input_arcs.end())
        os << "    in " << p << ": " << it->second.to_string() << ";\n";
    for (const auto &p : net.places)
      if (auto it = net.output_arcs.find({t.id, p}); it != net.output_arcs.end())
        os << "    out " << p << ": " << it->second.to_string() << ";\n";
    for (const auto &p : net.places)
      if (auto it = net.read_arcs.find({p, t.id}); it != net.read_arcs.end())
        os << "    read " << p << ": " << it->second.to_string() << ";\n";
    for (const auto &p : net.inhibitors_of(t.id))
      os << "    inhibit " << p << ";\n";
    for (const auto &p : net.resets_of(t.id))
      os << "    reset " << p << ";\n";
    os << "  }\n";
  }
  for (const auto &p : net.places)
    if (!m0.at(p).empty())
      os << "  marking " << p << ": " << m0.at(p).to_string() << ";\n";
  os << "}\n";
  return os.str();
}

} // namespace cpn
