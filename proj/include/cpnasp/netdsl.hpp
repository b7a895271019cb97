#pragma once

#include "cpnasp/enumerator.hpp"
#include "cpnasp/net.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpn {

struct Diagnostic {
  std::string code;
  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;

  std::string to_string(std::string_view filename = {}) const;
};

bool has_errors(const std::vector<Diagnostic> &diags);

struct ParsedNet {
  /// Present only when no error diagnostics were produced.
  std::optional<NetDef> net;
  Marking initial;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return net.has_value(); }
};

/// Parses a `.cpn` net description:
///
///   net NAME {
///     colors c1, c2;
///     places p1, p2;
///     transition t [pri N] [dur N] {
///       in p: c/n, ...;  out p: c/n;  read p: c/n;  inhibit p;  reset p;
///     }
///     marking p: c/n, ...;
///   }
///
/// `#` starts a line comment. All diagnostics are collected, not just the
/// first one.
ParsedNet parse_net(std::string_view text);

struct ParsedConstraints {
  std::vector<Constraint> constraints;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

/// Parses a `.cns` way-point file:
///
///   fires(t) at 4;
///   not fires(t) at 2;
///   holds(p, c) >= 6 at 3;
///   holds(p, c) = 0 at 5;
ParsedConstraints parse_constraints(std::string_view text);

/// Binds parsed constraints to a net; reports unknown identifiers and steps
/// beyond the horizon.
std::vector<Diagnostic> resolve_constraints(const NetDef &net,
                                            const std::vector<Constraint> &cs,
                                            std::size_t horizon);

/// Renders a net and initial marking back to `.cpn` source.
std::string render_net(const NetDef &net, const Marking &m0);

} // namespace cpn
