#pragma once

#include <string>
#include <vector>

#include "uniserial/quiver.hpp"

namespace uniserial {

/// One relation: a K-linear combination of parallel paths of length >= 2.
/// Coefficients are nonzero, paths pairwise distinct.
struct Relation {
  std::vector<std::pair<Rational, Path>> terms;
};

/// The coordinatized algebra KG/I: a quiver, scalar relations and a
/// nilpotency bound `loewy` (every path of length >= loewy lies in I).
struct Presentation {
  Quiver quiver;
  std::vector<Relation> relations;
  int loewy = 2;
  bool monomial = false;              // derived: every relation has one term
  std::vector<std::string> warnings;  // parse-time notes (dropped terms etc.)
};

/// Parses the line-oriented presentation grammar (see README). Validates all
/// invariants; computes the nilpotency bound for monomial input that omits
/// `loewy:`.
Presentation parse_presentation(const std::string& text);

/// Canonical text form; parse(serialize(P)) is structurally equal to P.
std::string serialize(const Presentation& p);

bool is_monomial(const Presentation& p);

/// Exact ideal membership for monomial ideals: q is in I iff q has length
/// >= loewy or some generator path is a subpath of q.
bool monomial_contains(const Presentation& p, const Path& q);

/// All paths of length <= min(maxlen, loewy-1) not contained in I; for a
/// monomial presentation these are exactly the masts of that length.
std::vector<Path> nonzero_paths(const Presentation& p, int maxlen);

/// Arrows reversed, every relation path reversed term-wise, same scalars and
/// bound. Involutive up to structural equality.
Presentation opposite_presentation(const Presentation& p);

bool structurally_equal(const Presentation& a, const Presentation& b);

}  // namespace uniserial
