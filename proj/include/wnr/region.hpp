#pragma once

#include <span>
#include <utility>
#include <vector>

#include "wnr/support.hpp"

namespace wnr {

/// The half-plane { v : Re(e^{i theta} v) <= offset }.
struct HalfPlane {
  double theta = 0.0;
  double offset = 0.0;
};

enum class RegionKind { Full2D, Segment, Point, Empty };

/// Convex region described by its vertex list: a counterclockwise polygon
/// (Full2D), two endpoints (Segment), one point (Point), or nothing (Empty).
class ConvexRegion {
 public:
  ConvexRegion() : kind_(RegionKind::Empty), scale_(1.0) {}
  ConvexRegion(std::vector<cplx> vertices, RegionKind kind, double scale)
      : verts_(std::move(vertices)), kind_(kind), scale_(scale) {}

  bool empty() const { return kind_ == RegionKind::Empty; }
  RegionKind kind() const { return kind_; }
  const std::vector<cplx>& vertices() const { return verts_; }
  double scale() const { return scale_; }

  double area() const;
  double diameter() const;
  bool contains(cplx p, double slack) const;
  /// Distance from p to the region (0 inside).
  double distance(cplx p) const;
  /// Distance from p to the region boundary (positive also inside).
  double boundary_distance(cplx p) const;

 private:
  std::vector<cplx> verts_;
  RegionKind kind_;
  double scale_;
};

/// W(A;c) as the intersection of sampled supporting half-planes. Hermitian
/// inputs take the exact real-segment route; otherwise the sampled grid is
/// augmented with bisection-refined support kink angles so polygonal facets
/// come out flat.
ConvexRegion build_region(const ComplexMatrix& a, const WeightVector& c, int grid_n);

bool is_empty(const ConvexRegion& r);

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = false;
};

/// For Hermitian A: [ sum_j c_{n+1-j} lambda_j , sum_j c_j lambda_j ],
/// empty when the lower bound exceeds the upper one.
RealInterval hermitian_segment(const ComplexMatrix& a, const WeightVector& c);

/// Exact polygon for a normal matrix: half-planes at the finitely many
/// angles where the descending order of Re(e^{i theta} mu_j) switches.
ConvexRegion polygon_for_normal(const ComplexMatrix& a, const WeightVector& c);

struct BoundaryIntersections {
  std::vector<cplx> points;  // transversal crossings, ordered along R1's boundary
  std::vector<std::pair<cplx, cplx>> overlaps;  // collinear shared stretches
  bool full_overlap = false;
};

BoundaryIntersections boundary_intersections(const ConvexRegion& r1, const ConvexRegion& r2);

struct CommonSupportAngle {
  double phi = 0.0;
  double gap = 0.0;
  bool boundary_segment_case = false;  // phi landed on omega_1 or omega_2
  double omega1 = 0.0, omega2 = 0.0;
};

/// Common supporting direction guaranteed by three counterclockwise shared
/// boundary points: phi in [omega_2, omega_1] with vanishing support gap,
/// omega_l = Arg(i * conj(z_{l+1} - z_l)).
CommonSupportAngle common_supporting_angle(const ComplexMatrix& a, const WeightVector& c,
                                           const ComplexMatrix& b, const WeightVector& d,
                                           cplx z1, cplx z2, cplx z3);

struct SharpPoint {
  cplx location;
  double theta_lo = 0.0;  // supporting-direction cone [theta_lo, theta_hi]
  double theta_hi = 0.0;
};

/// Boundary corners, recovered from the support profile as angular runs on
/// which the contact point stays put; cone must span more than 1e-3 rad.
std::vector<SharpPoint> detect_sharp_points(const ConvexRegion& r, const ComplexMatrix& a,
                                            const WeightVector& c, int grid_n = 4096);

struct ArcFit {
  enum class Kind { Circle, Ellipse };
  Kind kind = Kind::Circle;
  cplx center;
  double radius = 0.0;                  // circle
  cplx focus1, focus2;                  // ellipse, sorted by (re, im)
  double semi_major = 0.0, semi_minor = 0.0;
  double residual = 0.0;                // RMS orthogonal distance
};

ArcFit fit_circle(std::span<const cplx> points);
ArcFit fit_ellipse(std::span<const cplx> points);

/// m supporting-line contact points at uniformly spaced angles. Beware:
/// on polygonal regions these pile up on the corners.
std::vector<cplx> sample_boundary(const ComplexMatrix& a, const WeightVector& c, int m);

/// m points spread by arc length along the region's boundary polyline.
std::vector<cplx> sample_region_boundary(const ConvexRegion& r, int m);

/// Hausdorff distance between two regions (vertex-based; exact for convex sets).
double region_hausdorff(const ConvexRegion& r1, const ConvexRegion& r2);

namespace detail {

/// Grid-sampled construction without the Hermitian shortcut (kink refinement
/// optional); exposed for cross-checks in tests.
ConvexRegion build_region_sampled(const ComplexMatrix& a, const WeightVector& c, int grid_n,
                                  bool refine_kinks);

/// Intersection of half-planes; scale_hint feeds the degeneracy tolerances.
ConvexRegion intersect_half_planes(const std::vector<HalfPlane>& planes, double scale_hint);

}  // namespace detail

}  // namespace wnr
