#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uniserial/variety.hpp"

namespace uniserial {

/// The linear template deciding which points of the variety parametrize the
/// same uniserial module as the base point: unknowns Z_1..Z_t, one per
/// positive-length right subpath returning to the start vertex.
struct FiberSystem {
  MastContext ctx;
  PointMap base;
  std::vector<int> cycle_lens;  // lengths of w_1..w_t, increasing
  /// a[var][j] = coefficient of v_i in the instantiated evaluation of
  /// alpha.u.w_j from the bottom layer; b[{i_var, mu_var}][j] likewise for
  /// v_mu(alpha,u).w_j (same detour, mu < i).
  std::map<VarKey, std::vector<Rational>> a;
  std::map<std::pair<VarKey, VarKey>, std::vector<Rational>> b;
};

/// Requires base to lie on the variety of p.
FiberSystem fiber_system(const Presentation& pres, const Path& p, const PointMap& base);

/// The rows of the system for a query point (unknowns Z_j).
LinearSystem instantiate_fiber_rows(const FiberSystem& fs, const PointMap& query);

struct IsoResult {
  bool equivalent = false;
  std::map<VarKey, Rational> witness;  // Z assignment when equivalent
};

IsoResult iso_equivalent(const Presentation& pres, const Path& p, const PointMap& k0,
                         const PointMap& k);

struct IsoPartition {
  std::vector<std::vector<int>> classes;  // indices into the input list
  std::vector<std::string> anomalies;     // asymmetric outcomes, never merged
};

/// Union-find refinement; each tested pair is checked in both directions.
IsoPartition iso_classes(const Presentation& pres, const Path& p,
                         const std::vector<PointMap>& points);
IsoPartition iso_classes(const Presentation& pres, const VarietyPresentation& vp,
                         const std::vector<PointMap>& points);

/// The constructive elimination of slack coordinates: processes the slack
/// triples by increasing cycle length, each step retracting the top element
/// along the matching fiber move. Idempotent; output equivalent to input.
/// Requires every slack variable to factor as alpha.u.w (cycle_factorization).
PointMap normalize_point(const Presentation& pres, const Path& p, const PointMap& k);

struct LayeredGraph {
  std::vector<int> layer_vertex;
  std::vector<int> spine_arrows;
  struct DetourEdge {
    int from = 0;  // len(u)
    int to = 0;    // length of the shortest v_i with nonzero coefficient
    std::string arrow;
  };
  std::vector<DetourEdge> edges;
};

LayeredGraph layered_graph(const Presentation& pres, const Path& p, const PointMap& k);
std::string emit_dot(const Quiver& q, const LayeredGraph& g);

}  // namespace uniserial
