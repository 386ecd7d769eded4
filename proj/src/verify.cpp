#include "wnr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wnr {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

long long bezout_bound(const WeightVector& c, int na, const WeightVector& d, int nb) {
  return degree(c, na).degree * degree(d, nb).degree;
}

bool is_sorted_desc(const WeightVector& c) {
  for (int i = 0; i + 1 < c.dim(); ++i)
    if (c[i] < c[i + 1]) return false;
  return true;
}

// Merge angles closer than 2pi/gridN (circularly); a cluster counts as a
// crossing if any member crossed.
AngleCounts merge_angle_counts(const std::vector<SupportAngleRoot>& roots, int grid_n) {
  AngleCounts counts;
  if (roots.empty()) return counts;
  const double merge = kTwoPi / grid_n;
  std::vector<char> cluster_crossing;
  double cluster_start = roots.front().theta;
  double prev = cluster_start;
  bool crossing = !roots.front().tangential;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (roots[i].theta - prev < merge) {
      crossing = crossing || !roots[i].tangential;
    } else {
      cluster_crossing.push_back(crossing);
      crossing = !roots[i].tangential;
      cluster_start = roots[i].theta;
    }
    prev = roots[i].theta;
  }
  cluster_crossing.push_back(crossing);
  // wrap-around: last cluster touching the first across 2pi merges into it
  if (cluster_crossing.size() >= 2 && (kTwoPi - prev) + roots.front().theta < merge) {
    cluster_crossing.front() = cluster_crossing.front() || cluster_crossing.back();
    cluster_crossing.pop_back();
  }
  for (char cr : cluster_crossing)
    if (cr)
      ++counts.crossing;
    else
      ++counts.tangential;
  return counts;
}

void finish_verdict(TheoremReport& r) {
  if (!r.hypothesis_met)
    r.verdict = Verdict::ConsistentHypothesisNotMet;
  else
    r.verdict =
        r.common_values.empty() ? Verdict::Inconsistent : Verdict::ConsistentHypothesisMet;
}

nlohmann::ordered_json json_complex(cplx z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ConsistentHypothesisMet:
      return "ConsistentHypothesisMet";
    case Verdict::ConsistentHypothesisNotMet:
      return "ConsistentHypothesisNotMet";
    case Verdict::Inconsistent:
      return "INCONSISTENT";
  }
  return "?";
}

nlohmann::ordered_json report_to_json(const TheoremReport& r) {
  nlohmann::ordered_json j;
  j["theorem"] = r.theorem;
  j["bound"] = r.bound;
  j["angles"] = {{"crossing", r.angles.crossing},
                 {"tangential", r.angles.tangential},
                 {"identically_zero", r.angles.identically_zero}};
  j["hypothesis_met"] = r.hypothesis_met;
  j["hypothesis_mode"] = r.hypothesis_mode;
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (const CValueMatch& m : r.common_values) {
    nlohmann::ordered_json e;
    e["value"] = json_complex(m.value);
    e["witnessA"] = m.witness_a;
    e["witnessB"] = m.witness_b;
    vals.push_back(e);
  }
  j["common_values"] = vals;
  j["verdict"] = verdict_name(r.verdict);
  j["seed"] = r.seed;
  j["gridN"] = r.grid_n;
  j["notes"] = r.notes;
  j["details"] = r.details;
  return j;
}

TheoremReport verify_theorem_main(const ComplexMatrix& a, const WeightVector& c,
                                  const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                  double match_tol) {
  TheoremReport r;
  r.theorem = "equal-support-angles";
  r.grid_n = grid_n;
  r.bound = bezout_bound(c, a.dim(), d, b.dim());
  r.hypothesis_mode = "verified";
  r.notes =
      "counts common supporting lines of the equal-support form only (always exhaustive for "
      "sorted weights or differentiable contact); irreducibility of r(A;c) not checked, so only "
      "the common-value conclusion is asserted";

  const EqualSupportAngles esa = find_equal_support_angles(a, c, b, d, grid_n);
  r.angles = merge_angle_counts(esa.roots, grid_n);
  r.angles.identically_zero = esa.sentinel != EqualSupportAngles::Sentinel::None;
  r.hypothesis_met =
      r.angles.identically_zero || (r.angles.crossing + r.angles.tangential >= r.bound + 1);

  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (const SupportAngleRoot& root : esa.roots)
    roots.push_back({{"theta", root.theta}, {"tangential", root.tangential}});
  r.details["equal_support_angles"] = roots;
  if (esa.sentinel == EqualSupportAngles::Sentinel::IdenticallyZero)
    r.details["sentinel"] = "identically-zero";
  if (esa.sentinel == EqualSupportAngles::Sentinel::IdenticallyZeroOnArc) {
    r.details["sentinel"] = "identically-zero-on-arc";
    nlohmann::ordered_json arcs = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : esa.zero_arcs) arcs.push_back({lo, hi});
    r.details["zero_arcs"] = arcs;
  }

  r.common_values = common_cvalue(a, c, b, d, match_tol);
  finish_verdict(r);
  return r;
}

TheoremReport verify_boundary_points(const ComplexMatrix& a, const WeightVector& c,
                                     const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                     double match_tol) {
  TheoremReport r;
  r.theorem = "common-boundary-points";
  r.grid_n = grid_n;
  r.bound = bezout_bound(c, a.dim(), d, b.dim());
  r.hypothesis_mode = "verified";

  const ConvexRegion ra = build_region(a, c, grid_n);
  const ConvexRegion rb = build_region(b, d, grid_n);
  if (ra.kind() != RegionKind::Full2D || rb.kind() != RegionKind::Full2D)
    throw DegenerateRegion("common-boundary-points needs two 2-dimensional regions");

  const BoundaryIntersections bi = boundary_intersections(ra, rb);
  if (bi.full_overlap) {
    // identical boundaries: fall through to the equal-ranges reasoning
    r.angles.identically_zero = true;
    r.hypothesis_met = true;
    r.notes = "boundaries fully overlap; equal-ranges corollary path";
    r.details["full_overlap"] = true;
    r.common_values = common_cvalue(a, c, b, d, match_tol);
    finish_verdict(r);
    return r;
  }

  r.details["intersection_count"] = bi.points.size();
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const cplx& p : bi.points) pts.push_back(json_complex(p));
  r.details["intersections"] = pts;
  r.details["overlap_segments"] = bi.overlaps.size();

  std::vector<SupportAngleRoot> phis;
  int failed_triples = 0;
  const std::size_t k = bi.points.size();
  if (k >= 3) {
    for (std::size_t l = 0; l < k; ++l) {
      try {
        const CommonSupportAngle csa =
            common_supporting_angle(a, c, b, d, bi.points[l], bi.points[(l + 1) % k],
                                    bi.points[(l + 2) % k]);
        phis.push_back({csa.phi, false});
      } catch (const NoSignChange&) {
        ++failed_triples;
      }
    }
  }
  std::sort(phis.begin(), phis.end(),
            [](const SupportAngleRoot& x, const SupportAngleRoot& y) { return x.theta < y.theta; });
  r.angles = merge_angle_counts(phis, grid_n);
  r.hypothesis_met = r.angles.crossing + r.angles.tangential >= r.bound + 1;
  if (failed_triples > 0)
    r.notes = std::to_string(failed_triples) + " triple(s) produced no sign change";

  nlohmann::ordered_json phi_json = nlohmann::ordered_json::array();
  for (const SupportAngleRoot& p : phis) phi_json.push_back(p.theta);
  r.details["supporting_angles"] = phi_json;
  r.details["distinct_supporting_angles"] = r.angles.crossing + r.angles.tangential;

  r.common_values = common_cvalue(a, c, b, d, match_tol);
  finish_verdict(r);
  return r;
}

TheoremReport check_circle_corollary(const ComplexMatrix& a, const WeightVector& c, int grid_n) {
  TheoremReport r;
  r.theorem = "circle-corollary";
  r.grid_n = grid_n;
  const DegreeInfo info = degree(c, a.dim());
  r.bound = info.degree;
  r.hypothesis_mode = "verified";

  const ConvexRegion region = build_region(a, c, grid_n);
  if (region.empty() || region.kind() != RegionKind::Full2D) {
    r.hypothesis_mode = "not-applicable";
    r.notes = "region is empty or degenerate; no circle to fit";
    finish_verdict(r);
    return r;
  }

  const int m = std::max(int(2 * info.degree + 1), 64);
  const std::vector<cplx> samples = sample_region_boundary(region, m);
  ArcFit fit;
  try {
    fit = fit_circle(samples);
  } catch (const DegenerateConfiguration&) {
    r.hypothesis_mode = "not-applicable";
    r.notes = "boundary samples do not admit a circle fit";
    finish_verdict(r);
    return r;
  }
  r.details["center"] = json_complex(fit.center);
  r.details["radius"] = fit.radius;
  r.details["residual"] = fit.residual;
  r.details["samples"] = m;

  const double scale = region.scale();
  r.hypothesis_met = fit.residual <= 1e-5 * region.diameter();
  if (r.hypothesis_met) {
    const CValueSet set = enumerate_cvalues(eig_general(a), c);
    const double coincide_tol = 1e-7 * scale;
    for (std::size_t i = 0; i < set.values.size(); ++i) {
      if (std::abs(set.values[i] - fit.center) > 1e-5 * scale) continue;
      const int mult = cvalue_multiplicity(set, set.values[i], coincide_tol);
      if (mult >= 2) {
        r.common_values.push_back({set.values[i], set.witnesses[i], {}});
        r.details["multiplicity"] = mult;
        break;
      }
    }
  } else {
    r.notes = "boundary is not a circle at the residual threshold";
  }
  finish_verdict(r);
  return r;
}

TheoremReport check_ellipse_corollary(const ComplexMatrix& a, const WeightVector& c, int grid_n) {
  TheoremReport r;
  r.theorem = "ellipse-corollary";
  r.grid_n = grid_n;
  const DegreeInfo info = degree(c, a.dim());
  r.bound = info.degree;
  r.hypothesis_mode = "verified";

  const ConvexRegion region = build_region(a, c, grid_n);
  if (region.empty() || region.kind() != RegionKind::Full2D) {
    r.hypothesis_mode = "not-applicable";
    r.notes = "region is empty or degenerate; no ellipse to fit";
    finish_verdict(r);
    return r;
  }

  const int m = std::max(int(2 * info.degree + 1), 64);
  const std::vector<cplx> samples = sample_region_boundary(region, m);
  ArcFit fit;
  try {
    fit = fit_ellipse(samples);
  } catch (const DegenerateConfiguration&) {
    r.hypothesis_mode = "not-applicable";
    r.notes = "boundary samples do not admit an ellipse fit";
    finish_verdict(r);
    return r;
  }
  r.details["focus1"] = json_complex(fit.focus1);
  r.details["focus2"] = json_complex(fit.focus2);
  r.details["semi_major"] = fit.semi_major;
  r.details["semi_minor"] = fit.semi_minor;
  r.details["residual"] = fit.residual;

  const double scale = region.scale();
  r.hypothesis_met = fit.residual <= 1e-5 * region.diameter();
  if (r.hypothesis_met) {
    const CValueSet set = enumerate_cvalues(eig_general(a), c);
    const double tol = 1e-4 * scale;
    for (cplx focus : {fit.focus1, fit.focus2}) {
      for (std::size_t i = 0; i < set.values.size(); ++i)
        if (std::abs(set.values[i] - focus) <= tol) {
          r.common_values.push_back({set.values[i], set.witnesses[i], {}});
          break;
        }
    }
    if (r.common_values.size() < 2) r.common_values.clear();  // both foci must match
  } else {
    r.notes = "boundary is not an ellipse at the residual threshold";
  }
  finish_verdict(r);
  return r;
}

TheoremReport check_sharp_point_corollary(const ComplexMatrix& a, const WeightVector& c,
                                          int grid_n) {
  if (!is_sorted_desc(c))
    throw Error("sharp-point corollary is about W_c: sort the weights descending first");
  TheoremReport r;
  r.theorem = "sharp-point-corollary";
  r.grid_n = grid_n;
  r.bound = degree(c, a.dim()).degree;
  r.hypothesis_mode = "verified";

  const ConvexRegion region = build_region(a, c, grid_n);
  if (region.empty()) {
    r.hypothesis_mode = "not-applicable";
    r.notes = "region is empty";
    finish_verdict(r);
    return r;
  }
  const std::vector<SharpPoint> sharp = detect_sharp_points(region, a, c, grid_n);
  r.details["sharp_points"] = sharp.size();
  r.hypothesis_met = !sharp.empty();
  if (sharp.empty()) {
    r.notes = "no sharp points detected; corollary holds vacuously";
    finish_verdict(r);
    return r;
  }

  const CValueSet set = enumerate_cvalues(eig_general(a), c);
  const double tol = 1e-6 * region.scale();
  bool all_matched = true;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const SharpPoint& s : sharp) {
    bool matched = false;
    for (std::size_t i = 0; i < set.values.size(); ++i)
      if (std::abs(set.values[i] - s.location) <= tol) {
        r.common_values.push_back({set.values[i], set.witnesses[i], {}});
        matched = true;
        break;
      }
    all_matched = all_matched && matched;
    pts.push_back({{"location", json_complex(s.location)},
                   {"cone", {s.theta_lo, s.theta_hi}},
                   {"matched", matched}});
  }
  r.details["sharp_point_list"] = pts;
  if (!all_matched) r.common_values.clear();  // force INCONSISTENT: a corner missed
  finish_verdict(r);
  return r;
}

TheoremReport check_nilpotent_corollary(const ComplexMatrix& a, int trials_c, std::uint64_t seed,
                                        int grid_n) {
  if (trials_c < 20) throw Error("nilpotent corollary sampling needs trialsC >= 20");
  TheoremReport r;
  r.theorem = "nilpotent-corollary";
  r.grid_n = grid_n;
  r.seed = seed;
  r.hypothesis_mode = "sampled";
  r.notes = "the universal quantifier over c is sampled (" + std::to_string(trials_c) +
            " draws), not verified";
  r.bound = trials_c;

  Rng rng(seed);
  const double scale = 1.0 + a.max_abs();
  bool all_discs = true;
  for (int t = 0; t < trials_c && all_discs; ++t) {
    std::vector<double> w(static_cast<std::size_t>(a.dim()));
    for (double& v : w) v = rng.normal();
    std::sort(w.begin(), w.end(), std::greater<double>());
    const WeightVector c(w);

    const ConvexRegion region = build_region(a, c, grid_n);
    bool disc = false;
    if (region.kind() == RegionKind::Point) {
      disc = std::abs(region.vertices()[0]) <= 1e-5 * scale;  // radius-0 disc at 0
    } else if (region.kind() == RegionKind::Full2D) {
      try {
        const ArcFit fit = fit_circle(sample_region_boundary(region, 128));
        disc = fit.residual <= 1e-5 * region.diameter() && std::abs(fit.center) <= 1e-5 * scale;
      } catch (const DegenerateConfiguration&) {
        disc = false;
      }
    }
    if (!disc) {
      all_discs = false;
      r.details["witness_c"] = w;
      r.details["witness_kind"] = int(region.kind());
    }
  }

  r.hypothesis_met = all_discs;
  if (!all_discs) {
    r.notes += "; witness weight vector found whose range is not a disc centered at 0";
    finish_verdict(r);
    return r;
  }

  const Spectrum sp = eig_general(a);
  double max_mod = 0.0;
  for (const cplx& lam : sp.eigenvalues) max_mod = std::max(max_mod, std::abs(lam));
  r.details["max_eigenvalue_modulus"] = max_mod;
  const bool nilpotent = max_mod <= 1e-6 * scale;
  if (nilpotent) {
    r.common_values.push_back({cplx(0.0, 0.0), {}, {}});
    r.verdict = Verdict::ConsistentHypothesisMet;
    r.notes += "; all sampled ranges are discs centered at 0 and the spectrum vanishes";
  } else {
    r.verdict = Verdict::Inconsistent;
  }
  return r;
}

TheoremReport check_curve_overlap(const ComplexMatrix& a, const WeightVector& c,
                                  const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                  double match_tol) {
  TheoremReport r;
  r.theorem = "curve-overlap-corollary";
  r.grid_n = grid_n;
  r.bound = bezout_bound(c, a.dim(), d, b.dim());
  r.hypothesis_mode = "verified";

  const ConvexRegion ra = build_region(a, c, grid_n);
  const ConvexRegion rb = build_region(b, d, grid_n);
  if (ra.kind() != RegionKind::Full2D || rb.kind() != RegionKind::Full2D) {
    r.hypothesis_mode = "not-applicable";
    r.notes = "needs two 2-dimensional regions";
    finish_verdict(r);
    return r;
  }
  const double scale = std::max(ra.scale(), rb.scale());

  // Longest circular run of R1 vertices sitting on R2's boundary.
  const auto& v = ra.vertices();
  const int n = int(v.size());
  std::vector<char> on(std::size_t(n), 0);
  for (int i = 0; i < n; ++i)
    on[std::size_t(i)] = rb.boundary_distance(v[std::size_t(i)]) < 1e-7 * scale;

  bool curved_overlap = false;
  for (int s = 0; s < n && !curved_overlap; ++s) {
    if (!on[std::size_t(s)] || on[std::size_t((s + n - 1) % n)]) continue;
    int len = 1;
    while (len < n && on[std::size_t((s + len) % n)]) ++len;
    if (len < 32) continue;
    // not-a-straight-line test: peak deviation from the run's chord
    const cplx p0 = v[std::size_t(s)];
    const cplx p1 = v[std::size_t((s + len - 1) % n)];
    const cplx chord = p1 - p0;
    const double clen = std::abs(chord);
    double dev = 0.0;
    for (int i = 1; i + 1 < len; ++i) {
      const cplx q = v[std::size_t((s + i) % n)] - p0;
      dev = std::max(dev, clen > 0.0 ? std::abs(q.real() * chord.imag() - q.imag() * chord.real()) / clen
                                     : std::abs(q));
    }
    if (dev > 1e-6 * scale) {
      curved_overlap = true;
      r.details["overlap_samples"] = len;
      r.details["chord_deviation"] = dev;
    }
  }
  if (n > 0 && std::all_of(on.begin(), on.end(), [](char x) { return x != 0; })) {
    curved_overlap = true;  // identical boundaries
    r.details["overlap_samples"] = n;
  }

  r.hypothesis_met = curved_overlap;
  if (!curved_overlap) r.notes = "no curved shared boundary stretch; corollary holds vacuously";
  if (curved_overlap) r.common_values = common_cvalue(a, c, b, d, match_tol);
  finish_verdict(r);
  return r;
}

TheoremReport check_equal_ranges(const ComplexMatrix& a, const WeightVector& c,
                                 const ComplexMatrix& b, const WeightVector& d, int grid_n,
                                 double match_tol) {
  if (!is_sorted_desc(c) || !is_sorted_desc(d))
    throw Error("equal-ranges corollary is about W_c: sort both weight vectors descending first");
  TheoremReport r;
  r.theorem = "equal-ranges-corollary";
  r.grid_n = grid_n;
  r.bound = bezout_bound(c, a.dim(), d, b.dim());
  r.hypothesis_mode = "verified";

  const ConvexRegion ra = build_region(a, c, grid_n);
  const ConvexRegion rb = build_region(b, d, grid_n);
  if (ra.empty() || rb.empty()) {
    r.hypothesis_met = ra.empty() && rb.empty();
    r.hypothesis_mode = "not-applicable";
    r.notes = "at least one region is empty";
    r.verdict = Verdict::ConsistentHypothesisNotMet;
    return r;
  }
  const double scale = std::max(ra.scale(), rb.scale());
  const double hd = region_hausdorff(ra, rb);
  r.details["hausdorff"] = hd;
  r.hypothesis_met = hd <= 1e-6 * scale;
  if (!r.hypothesis_met) r.notes = "ranges differ; corollary holds vacuously";
  if (r.hypothesis_met) r.common_values = common_cvalue(a, c, b, d, match_tol);
  finish_verdict(r);
  return r;
}

}  // namespace wnr
