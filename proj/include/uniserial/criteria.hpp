#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uniserial/variety.hpp"

namespace uniserial {

enum class Verdict { holds, fails, unknown };

struct ArrowMastViolation {
  int arrow = -1;
  Path mast;
};

/// Every mast parallel to an arrow must start or end with that arrow.
/// Unknown masthood never passes silently: non-conforming paths of unknown
/// status are listed and downgrade the verdict.
struct ConditionNReport {
  Verdict verdict = Verdict::unknown;
  std::vector<ArrowMastViolation> violations;
  std::vector<std::pair<int, Path>> unknown;  // (arrow, path) pending masthood
};

ConditionNReport check_condition_n(const Presentation& pres);

/// The strengthening that forces every uniserial variety to be finite:
/// every mast parallel to an arrow must START with that arrow.
struct VarietiesFiniteReport {
  Verdict verdict = Verdict::unknown;
  std::vector<ArrowMastViolation> violations;
  std::vector<std::pair<int, Path>> unknown;

  // equivalent readings of the same verdict
  bool varieties_finite() const { return verdict == Verdict::holds; }
  bool varieties_empty_or_singleton() const { return verdict == Verdict::holds; }
  bool graphs_classify_modules() const { return verdict == Verdict::holds; }
  bool graphs_are_edge_paths() const { return verdict == Verdict::holds; }
};

VarietiesFiniteReport check_all_varieties_finite(const Presentation& pres);

/// Masts whose start vertex carries a loop: p must be (tail after exit after
/// loop^mu) with the start vertex never revisited, and the slack variables
/// confined to the exit-arrow family.
struct LoopCaseResult {
  bool applicable = false;
  Verdict finite = Verdict::unknown;
  int mu = 0, nu = 0;
  std::string loop_arrow, exit_arrow;
  std::string evidence;
  bool no_tight_halyards = false;  // then exactly one module exists
};

LoopCaseResult check_loop_case(const Presentation& pres, const Path& p,
                               const SlackReport& report);

/// Necessary shape of a slack variable's target subpath:
/// v_r = alpha . eps_mu . b_mu . ... . eps_1 . b_1 . w with w a positive
/// cycle back to the start and each eps_i a (possibly trivial) cycle.
struct NecDecomposition {
  int w_len = 0;
  std::vector<int> beta_positions;  // position of b_i inside v_r, i = 1..mu
};

struct NecResult {
  enum class Outcome { satisfied, violated } outcome = Outcome::violated;
  std::optional<NecDecomposition> decomposition;
  std::vector<int> tried_cycles;  // candidate w lengths, exhaustion trace
};

/// Pure shape matcher; the public wrapper validates the slackness precondition.
NecResult check_nec_shape(const MastContext& ctx, const VarKey& var);
NecResult check_nec(const Presentation& pres, const Path& p, const VarKey& var);

/// Re-validates a decomposition certificate independently of the matcher.
bool verify_nec_certificate(const MastContext& ctx, const VarKey& var,
                            const NecDecomposition& dec);

/// Sufficient shape: every slack variable's target subpath factors exactly
/// as alpha . u . w. All satisfied => finitely many modules with this mast.
struct SufResult {
  Verdict all = Verdict::unknown;
  struct Entry {
    VarKey var;
    Verdict verdict;  // holds = satisfied, fails = violated
    std::optional<int> w_len;
  };
  std::vector<Entry> entries;  // one per variable of the context
};

SufResult check_suf(const MastContext& ctx, const SlackReport& report);
SufResult check_suf(const Presentation& pres, const Path& p);

/// Every family member of every detour factors as alpha.u.w.
bool uniform_cycle_factorization(const MastContext& ctx);

/// The hypothesis under which exactly one module lives over the mast and the
/// variety is a full affine space on the halyard variables: every family
/// member of every halyard factors as alpha.u.w. Detours whose halyard flag
/// is undecided are required to factor as well.
bool cycle_factorization_on_halyards(const MastContext& ctx, const SlackReport& report);

/// Monomial decision: arrow alignment plus the repeated-segment condition on
/// vertex sequences of nonzero paths.
struct MonomialSegmentWitness {
  Path path;
  int i = 0, j = 0;
};

struct MonomialSegmentReport {
  bool holds = false;
  std::optional<MonomialSegmentWitness> witness;
  std::optional<ArrowMastViolation> alignment_violation;
};

MonomialSegmentReport check_monomial_segments(const Presentation& pres);

/// The shape catalogue for masts of length <= 5: every slack halyard not
/// emerging from the top layer must embed into one of the listed graphs.
struct CatalogueResult {
  Verdict conforms = Verdict::unknown;
  struct Entry {
    VarKey var;
    bool top = false;        // emerges from the top layer (exempt)
    std::string pattern;     // matched pattern id, empty when none
    bool matched = false;
  };
  std::vector<Entry> entries;          // slack variables only
  std::optional<VarKey> violating;
};

CatalogueResult check_halyard_catalogue(const Presentation& pres, const Path& p,
                                        const SlackReport& report);

}  // namespace uniserial
