#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wnr/cvalues.hpp"
#include "wnr/region.hpp"
#include "wnr/rng.hpp"

namespace wnr {

enum class Verdict { ConsistentHypothesisMet, ConsistentHypothesisNotMet, Inconsistent };

std::string verdict_name(Verdict v);

struct AngleCounts {
  int crossing = 0;
  int tangential = 0;
  bool identically_zero = false;  // full circle or arcs of vanishing gap
};

/// One structured verification result. An Inconsistent verdict means the
/// hypothesis was met but the promised common value was not found; that is
/// a numerical counterexample candidate, never an expected outcome.
struct TheoremReport {
  std::string theorem;
  long long bound = 0;
  AngleCounts angles;
  bool hypothesis_met = false;
  std::string hypothesis_mode;  // "verified" | "sampled" | "assumed" | "not-applicable"
  std::vector<CValueMatch> common_values;
  Verdict verdict = Verdict::ConsistentHypothesisNotMet;
  std::uint64_t seed = kDefaultSeed;
  int grid_n = 0;
  std::string notes;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json report_to_json(const TheoremReport& report);

/// Equal-support-angle counting against the Bezout bound
/// deg(A;c) * deg(B;d); angles closer than 2pi/gridN count once.
TheoremReport verify_theorem_main(const ComplexMatrix& a, const WeightVector& c,
                                  const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                  double match_tol = -1.0);

/// Transversal boundary crossings -> common supporting angles per
/// consecutive triple -> the Bezout test on the deduplicated angles.
TheoremReport verify_boundary_points(const ComplexMatrix& a, const WeightVector& c,
                                     const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                     double match_tol = -1.0);

/// Circle through >= 2 deg(A;c)+1 boundary points => center is a repeated c-value.
TheoremReport check_circle_corollary(const ComplexMatrix& a, const WeightVector& c, int grid_n);

/// Ellipse through the boundary points => both foci are c-values.
TheoremReport check_ellipse_corollary(const ComplexMatrix& a, const WeightVector& c, int grid_n);

/// Sharp points of W_c (weights must arrive sorted descending) are c-values.
TheoremReport check_sharp_point_corollary(const ComplexMatrix& a, const WeightVector& c,
                                          int grid_n);

/// Samples >= 20 random descending weight vectors; all-discs-centered-at-0
/// must coincide with an all-zero spectrum. The universal quantifier is only
/// sampled, which the report states.
TheoremReport check_nilpotent_corollary(const ComplexMatrix& a, int trials_c,
                                        std::uint64_t seed = kDefaultSeed, int grid_n = 1024);

/// Shared curved boundary stretch (>= 32 consecutive samples) forces a
/// common c-/d-value.
TheoremReport check_curve_overlap(const ComplexMatrix& a, const WeightVector& c,
                                  const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                  double match_tol = -1.0);

/// W_c(A) == W_d(B) (Hausdorff <= 1e-6 * scale) forces a common value;
/// weights must arrive sorted descending on both sides.
TheoremReport check_equal_ranges(const ComplexMatrix& a, const WeightVector& c,
                                 const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                 double match_tol = -1.0);

}  // namespace wnr
