#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uniserial/poly.hpp"
#include "uniserial/presentation.hpp"

namespace uniserial {

/// A detour (alpha, u) on a mast: an arrow alpha leaving the mast at layer
/// len(u) whose target is hit again by strictly longer right subpaths. The
/// family v_i is recorded by the lengths of those subpaths, increasing.
struct Detour {
  int arrow = -1;
  std::string arrow_name;
  int u_len = 0;
  std::vector<int> v_lens;
};

/// Complete detour/family/variable inventory of a path p, everything in
/// canonical order so downstream reports are byte-reproducible.
struct MastContext {
  Path mast;
  std::vector<int> layer_vertex;  // vertex at layers 0..len(p)
  std::vector<Detour> detours;    // ordered by (u_len, arrow name)
  std::vector<VarKey> vars;       // canonical order

  int length() const { return (int)layer_vertex.size() - 1; }
  int detour_index(int arrow, int u_len) const;
  VarKey var(int detour_index, int family_index) const;  // family_index 1-based
  int var_position(const VarKey& v) const;               // index into vars
  /// The detour this variable belongs to.
  int detour_of(const VarKey& v) const;
};

MastContext build_mast_context(const Presentation& pres, const Path& p);

/// Basis coefficients of a substituted word: right-subpath length -> value.
using Evaluation = std::map<int, Polynomial>;

/// Applies the word's arrows in application order to the basis element given
/// by the right subpath of length start_len. Each step either extends the
/// spine, fans out through a detour's substitution equation, or dies.
Evaluation substitution_eval(const Presentation& pres, const MastContext& ctx, const Path& word,
                             int start_len);

/// Exact rational point, covering all variables of a context.
using PointMap = std::map<VarKey, Rational>;

struct VarietyStatus {
  enum class Kind { nonempty, empty, unknown };
  Kind kind = Kind::unknown;
  std::optional<PointMap> witness;  // satisfies all polynomials exactly
  std::string certificate;          // emptiness certificate / unknown reason
  bool solutions_complete = false;  // full rational solution set enumerated
  std::vector<PointMap> solutions;  // only when solutions_complete
};

struct VarietyPresentation {
  MastContext ctx;
  std::vector<Polynomial> polys;  // monic, deduplicated, canonical order
  VarietyStatus status;
};

VarietyPresentation variety_polynomials(const Presentation& pres, const Path& p);

struct MastStatus {
  enum class Kind { mast, not_mast, unknown };
  Kind kind = Kind::unknown;
  std::optional<PointMap> witness;
  std::string reason;
};

MastStatus mast_status(const Presentation& pres, const Path& p);

enum class SlackStatus { slack, tight, unknown };

struct VarClassification {
  VarKey var;
  SlackStatus status = SlackStatus::unknown;
  std::string evidence;  // "absent" | "parametric" | "finite value set" | reason
  std::vector<Rational> values;  // tight: the forced value set
  bool values_verified = true;   // every listed value extends to a point
};

struct DetourFlags {
  int detour_index = 0;
  std::optional<bool> halyard;  // some variable nonzero on a witness point
  bool circular = false;        // some v_i = alpha . c . u with c a nontrivial cycle
};

struct SlackReport {
  std::vector<VarClassification> vars;  // canonical order
  int free_count = 0;                   // variables absent from all polynomials
  std::vector<DetourFlags> detours;
};

/// Requires mast_status(pres, p) to be Mast.
SlackReport slack_report(const Presentation& pres, const Path& p);
SlackReport slack_report(const Presentation& pres, const VarietyPresentation& vp);

/// When v_r(alpha,u) factors as alpha . u . w with w a positive-length right
/// subpath of p ending at source(p), returns len(w).
std::optional<int> cycle_factorization(const MastContext& ctx, const VarKey& v);

/// Lengths of the positive-length right subpaths source(p) -> source(p);
/// their count is the pass count t of the fiber machinery.
std::vector<int> recurrence_lengths(const MastContext& ctx);

/// All points of the variety whose coordinates lie in `values` (every
/// coordinate). Canonically ordered; nullopt when the search space exceeds
/// `cap` leaves.
std::optional<std::vector<PointMap>> grid_points(const VarietyPresentation& vp,
                                                 const std::vector<Rational>& values,
                                                 long cap = 200000);

/// Integer range {lo..hi} as rationals.
std::vector<Rational> grid_range(long lo, long hi);

}  // namespace uniserial
