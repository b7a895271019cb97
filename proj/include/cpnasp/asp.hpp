#pragma once

#include "cpnasp/semantics.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpn {

/// Aggregate spelling in the emitted program. `Legacy` is the bracketed
/// `#sum[...]` form of older grounders; `Clingo5` uses `#sum{...}` and adds
/// `#show` directives for fires/2 and holds/4.
enum class AspDialect { Legacy, Clingo5 };

struct EmitterConfig {
  std::size_t horizon = 0;
  /// Upper bound of the num/1 domain. Must cover every token count reached.
  Count ntok = 30;
  SemanticsMode mode;
  AspDialect dialect = AspDialect::Legacy;
};

/// Durations are encoded (tparc/6) when some transition has duration > 1 or
/// the mode is non-reentrant.
bool emits_timed(const NetDef &net, const SemanticsMode &mode);

/// Complete ASP program for (net, m0, cfg). Byte-deterministic. The program
/// consists of a facts section, the initial marking, and a rules section
/// introduced by the line "% rules".
std::string emit(const NetDef &net, const Marking &m0, const EmitterConfig &cfg);

/// The rule block emit() appends for `cfg` (everything after "% rules").
std::string emit_rules(const NetDef &net, const EmitterConfig &cfg);

/// Largest single (place, color) count in any state reachable within the
/// horizon; compare against ntok.
Count max_reachable_count(const NetDef &net, const Marking &m0, std::size_t horizon,
                          const SemanticsMode &mode);

class AnswerSetError : public std::runtime_error {
public:
  AnswerSetError(std::string code, const std::string &msg, std::size_t line)
      : std::runtime_error(msg), code_(std::move(code)), line_(line) {}
  const std::string &code() const { return code_; }
  std::size_t line() const { return line_; }

private:
  std::string code_;
  std::size_t line_;
};

/// Reconstructs trajectories from solver output. Accepts either clingo-style
/// output ("Answer: N" header lines, other status lines ignored) or bare
/// answer sets separated by blank lines. Status lines (starting with an
/// uppercase letter) and `%` comments are skipped. Pooled atoms such as `fires(t1;t10,2)` are
/// expanded. Atoms other than fires/2 and holds/4 are ignored.
std::vector<Trajectory> parse_answer_sets(std::string_view solver_output, const NetDef &net,
                                          std::size_t horizon);

struct CrossReport {
  std::size_t matched = 0;
  std::vector<Trajectory> native_only;
  std::vector<Trajectory> external_only;

  bool equal() const { return native_only.empty() && external_only.empty(); }
};

/// Order-insensitive set comparison.
CrossReport cross_validate(const std::vector<Trajectory> &native,
                           const std::vector<Trajectory> &external);

std::string render_report(const NetDef &net, const CrossReport &r);

} // namespace cpn
