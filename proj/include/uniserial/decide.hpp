#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uniserial/criteria.hpp"
#include "uniserial/fibers.hpp"

namespace uniserial {

struct DecideOptions {
  bool fastpath = true;
  long grid_base = 2;    // probe grid {-g..g}
  long grid_cap = 4000;  // leaf cap for grid enumeration
};

struct MastVerdict {
  Path mast;
  enum class Status { finitely_many, infinite, unknown } status = Status::unknown;
  std::optional<long> classes;  // iso classes over the probe grid
  bool exactly_one = false;
  std::string route;  // which step settled it
  std::string infinite_reason;
  std::optional<VarKey> witness_var;
  std::vector<std::string> notes;
  bool linear = true;  // defining system linear (diagnostic)
};

/// Decides one mast: loop case, then the sufficient shape, then necessary
/// shape / dimension bound, then the stabilizing grid probe. Sampling alone
/// never claims infinitude.
MastVerdict decide_mast(const Presentation& pres, const Path& p,
                        const DecideOptions& opts = {});

struct AlgebraWitness {
  std::string kind;  // mast | double_arrow | arrow_alignment | monomial_segments | halyard_catalogue
  std::optional<Path> mast;
  std::string arrow;
  std::string detail;
  std::optional<MastVerdict> verdict;
};

struct AlgebraVerdict {
  enum class Status { finite_type, infinite_type, unknown } status = Status::unknown;
  std::optional<AlgebraWitness> witness;
  std::vector<std::string> trace;
  ConditionNReport alignment;
  std::vector<Path> masts;          // canonical order, length 1..loewy-1
  std::vector<Path> unknown_masts;  // undecided masthood
  std::vector<MastVerdict> mast_verdicts;  // per-mast route (or just the witness)
  // diagnostics: observed, never asserted
  std::optional<bool> all_varieties_linear;
  std::optional<bool> single_class_per_mast;
};

AlgebraVerdict decide_algebra(const Presentation& pres, const DecideOptions& opts = {});

/// Full machine-readable report; byte-stable for fixed input and options.
std::string report_json(const Presentation& pres, const AlgebraVerdict& verdict);
std::string mast_verdict_json(const Presentation& pres, const MastVerdict& verdict);

/// Shared JSON fragments used by the CLI.
std::string variety_json(const Presentation& pres, const Path& p);
std::string slack_json(const Presentation& pres, const Path& p);
std::string condition_n_json(const Presentation& pres);

}  // namespace uniserial
