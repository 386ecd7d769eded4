#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "wnr/region.hpp"

using namespace wnr;
using test::kPi;

namespace {
const cplx I(0.0, 1.0);

ComplexMatrix j2() { return test::jordan_block(2); }

ComplexMatrix disc095() {
  ComplexMatrix b(2);
  b(0, 1) = 1.9;
  return b;
}

ComplexMatrix roots_of_unity(int n) {
  std::vector<cplx> d(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) d[std::size_t(k)] = std::polar(1.0, 2.0 * kPi * k / n);
  return ComplexMatrix::diagonal(d);
}

WeightVector random_weights(Rng& rng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (double& v : w) v = rng.normal();
  return WeightVector(w);
}
}  // namespace

TEST_CASE("rank-2 range of diag(1,-1) is empty") {
  const ConvexRegion r = build_region(ComplexMatrix::diagonal({1.0, -1.0}), {0, 1}, 256);
  CHECK(r.empty());
  CHECK(is_empty(r));
}

TEST_CASE("rank-2 range of diag(1,1,-1,-1) is the segment [-1,1]") {
  const ConvexRegion r =
      build_region(ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}), test::unit_weight(4, 1), 256);
  REQUIRE(r.kind() == RegionKind::Segment);
  CHECK(std::abs(r.vertices()[0] - cplx(-1.0, 0.0)) < 1e-6);
  CHECK(std::abs(r.vertices()[1] - cplx(1.0, 0.0)) < 1e-6);
}

TEST_CASE("classical range of the nilpotent 2x2 block is the half-disc... the disc r=1/2") {
  const ConvexRegion r = build_region(j2(), {1, 0}, 4096);
  REQUIRE(r.kind() == RegionKind::Full2D);
  for (const cplx& v : r.vertices()) CHECK(std::abs(std::abs(v) - 0.5) <= 1e-4);
  // the disc itself must be covered (outer approximation)
  for (int k = 0; k < 64; ++k)
    CHECK(r.contains(0.5 * std::polar(1.0, 2 * kPi * k / 64.0), 1e-9));
}

TEST_CASE("W(I_2; (1/2,1/2)) collapses to the point 1") {
  const ConvexRegion r = build_region(ComplexMatrix::identity(2), {0.5, 0.5}, 256);
  REQUIRE(r.kind() == RegionKind::Point);
  CHECK(std::abs(r.vertices()[0] - cplx(1.0, 0.0)) < 1e-9);
  CHECK(!is_empty(r));
}

TEST_CASE("W(A; 0) is the origin") {
  Rng rng(21);
  const ConvexRegion r = build_region(rng.matrix(3), {0, 0, 0}, 256);
  REQUIRE(r.kind() == RegionKind::Point);
  CHECK(std::abs(r.vertices()[0]) < 1e-9);
}

TEST_CASE("hermitian_segment formula cases") {
  const RealInterval s1 = hermitian_segment(ComplexMatrix::diagonal({3.0, 1.0}), {1, 0});
  CHECK(!s1.empty);
  CHECK(s1.lo == doctest::Approx(1.0));
  CHECK(s1.hi == doctest::Approx(3.0));

  const RealInterval s2 = hermitian_segment(ComplexMatrix::diagonal({1.0, -1.0}), {0, 1});
  CHECK(s2.empty);
  CHECK(s2.lo == doctest::Approx(1.0));
  CHECK(s2.hi == doctest::Approx(-1.0));

  const RealInterval s3 =
      hermitian_segment(ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}), test::unit_weight(4, 1));
  CHECK(s3.lo == doctest::Approx(-1.0));
  CHECK(s3.hi == doctest::Approx(1.0));

  const ComplexMatrix nonherm = j2();
  CHECK_THROWS_AS(hermitian_segment(nonherm, WeightVector({1, 0})), NotHermitian);
}

TEST_CASE("hermitian segments match the sampled grid construction") {
  // The shipped build_region short-circuits Hermitian input; the sampled
  // route must land on the same interval (endpoints along the real axis).
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + int(rng.below(4));
    const ComplexMatrix a = rng.hermitian(n);
    const WeightVector c = random_weights(rng, n);
    const RealInterval seg = hermitian_segment(a, c);
    const ConvexRegion grid = detail::build_region_sampled(a, c, 1024, true);
    if (seg.empty) {
      CHECK(grid.empty());
      continue;
    }
    REQUIRE(!grid.empty());
    double lo = 1e300, hi = -1e300;
    for (const cplx& v : grid.vertices()) {
      lo = std::min(lo, v.real());
      hi = std::max(hi, v.real());
      CHECK(std::abs(v.imag()) < 1e-6 * grid.scale());
    }
    CHECK(std::abs(lo - seg.lo) <= 1e-8 * grid.scale());
    CHECK(std::abs(hi - seg.hi) <= 1e-8 * grid.scale());
  }
}

TEST_CASE("polygon_for_normal: square, segment, octagon") {
  const ConvexRegion square = polygon_for_normal(roots_of_unity(4), test::unit_weight(4, 0));
  REQUIRE(square.kind() == RegionKind::Full2D);
  REQUIRE(square.vertices().size() == 4);
  CHECK(test::multiset_close(square.vertices(), {1.0, I, -1.0, -I}, 1e-9));

  const ConvexRegion seg = polygon_for_normal(ComplexMatrix::diagonal({3.0, 1.0}), {1, 0});
  REQUIRE(seg.kind() == RegionKind::Segment);
  CHECK(std::abs(seg.vertices()[0] - cplx(1.0, 0.0)) < 1e-10);
  CHECK(std::abs(seg.vertices()[1] - cplx(3.0, 0.0)) < 1e-10);

  const ConvexRegion oct = polygon_for_normal(roots_of_unity(4), {0.5, 0.5, 0.0, 0.0});
  const ConvexRegion grid =
      detail::build_region_sampled(roots_of_unity(4), {0.5, 0.5, 0.0, 0.0}, 8192, true);
  CHECK(oct.vertices().size() <= 4 * 24);  // 4 n! bound
  CHECK(region_hausdorff(oct, grid) <= 1e-6 * oct.scale());

  const ComplexMatrix nonnormal = j2();
  CHECK_THROWS_AS(polygon_for_normal(nonnormal, WeightVector({1, 0})), NotNormal);
  const WeightVector e1_9 = test::unit_weight(9, 0);
  CHECK_THROWS_AS(polygon_for_normal(ComplexMatrix::identity(9), e1_9), DimensionTooLarge);
}

TEST_CASE("polygon_for_normal matches the grid construction on random input") {
  Rng rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + int(rng.below(4));  // up to 5
    const ComplexMatrix a = test::random_normal(rng, n);
    const WeightVector c = random_weights(rng, n);
    const ConvexRegion exact = polygon_for_normal(a, c);
    const ConvexRegion grid = detail::build_region_sampled(a, c, 8192, true);
    CHECK(region_hausdorff(exact, grid) <= 1e-5 * exact.scale());
  }
}

TEST_CASE("monotone refinement: doubling the grid shrinks the region") {
  Rng rng(24);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + int(rng.below(3));
    const ComplexMatrix a = rng.matrix(n);
    const WeightVector c = random_weights(rng, n);
    const ConvexRegion coarse = build_region(a, c, 512);
    const ConvexRegion fine = build_region(a, c, 1024);
    if (coarse.empty()) {
      CHECK(fine.empty());
      continue;
    }
    for (const cplx& v : fine.vertices()) CHECK(coarse.contains(v, 1e-12 * coarse.scale()));
  }
}

TEST_CASE("region vertices satisfy every sampled half-plane") {
  Rng rng(25);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + int(rng.below(3));
    const ComplexMatrix a = rng.matrix(n);
    const WeightVector c = random_weights(rng, n);
    const ConvexRegion r = build_region(a, c, 512);
    if (r.empty()) continue;
    for (int k = 0; k < 512; ++k) {
      const double theta = 2 * kPi * k / 512;
      const double h = weighted_support(a, c, theta);
      for (const cplx& v : r.vertices())
        CHECK((std::polar(1.0, theta) * v).real() <= h + 1e-9 * r.scale());
    }
  }
}

TEST_CASE("affine covariance at region level") {
  Rng rng(26);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2 + int(rng.below(3));
    const ComplexMatrix a = rng.matrix(n);
    const WeightVector c = random_weights(rng, n);
    const cplx gamma = rng.complex_normal();
    const cplx lambda = rng.complex_normal();

    const ConvexRegion base = build_region(a, c, 4096);
    if (base.empty()) continue;
    const ConvexRegion moved =
        build_region(gamma * a + lambda * ComplexMatrix::identity(n), c, 4096);
    std::vector<cplx> mapped;
    for (const cplx& v : base.vertices()) mapped.push_back(gamma * v + lambda * c.sum());
    const ConvexRegion mapped_region(mapped, base.kind(), moved.scale());
    CHECK(region_hausdorff(moved, mapped_region) <= 2e-3 * moved.scale());
  }
}

TEST_CASE("rank-k ranges nest for Hermitian matrices") {
  Rng rng(27);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 3 + int(rng.below(3));
    const ComplexMatrix a = rng.hermitian(n);
    for (int k = 0; k + 1 < n; ++k) {
      const ConvexRegion outer = build_region(a, test::unit_weight(n, k), 256);
      const ConvexRegion inner = build_region(a, test::unit_weight(n, k + 1), 256);
      if (inner.empty()) continue;
      REQUIRE(!outer.empty());
      for (const cplx& v : inner.vertices()) CHECK(outer.contains(v, 1e-9 * outer.scale()));
    }
  }
}

TEST_CASE("boundary_intersections: polygon against the disc") {
  const ConvexRegion square = build_region(roots_of_unity(4), test::unit_weight(4, 0), 4096);
  const ConvexRegion hexagon = build_region(roots_of_unity(6), test::unit_weight(6, 0), 4096);
  const ConvexRegion disc = build_region(disc095(), {1, 0}, 4096);

  const BoundaryIntersections sq = boundary_intersections(square, disc);
  CHECK(sq.points.size() == 8);
  CHECK(!sq.full_overlap);
  const BoundaryIntersections hx = boundary_intersections(hexagon, disc);
  CHECK(hx.points.size() == 12);
  // every crossing sits on the disc boundary |z| = 0.95
  for (const cplx& p : hx.points) CHECK(std::abs(std::abs(p) - 0.95) < 1e-6);

  const BoundaryIntersections same = boundary_intersections(disc, disc);
  CHECK(same.full_overlap);
  CHECK(same.points.empty());
}

TEST_CASE("boundary_intersections reports collinear overlaps") {
  // two real segments sharing [0.5, 1]; one strictly extends past the other
  const ConvexRegion s1 = build_region(ComplexMatrix::diagonal({0.0, 1.0}), {1, 0}, 256);
  const ConvexRegion s2 = build_region(ComplexMatrix::diagonal({0.5, 2.0}), {1, 0}, 256);
  const BoundaryIntersections bi = boundary_intersections(s1, s2);
  CHECK(bi.points.empty());
  REQUIRE(bi.overlaps.size() == 1);
  CHECK(std::abs(bi.overlaps[0].first - cplx(0.5, 0.0)) < 1e-9);
  CHECK(std::abs(bi.overlaps[0].second - cplx(1.0, 0.0)) < 1e-9);

  // sub-segment entirely inside the long one
  const ConvexRegion s3 = build_region(ComplexMatrix::diagonal({0.25, 0.75}), {1, 0}, 256);
  const BoundaryIntersections partial = boundary_intersections(s2, s3);
  REQUIRE(partial.overlaps.size() == 1);  // [0.5,2] meets [0.25,0.75] in [0.5,0.75]
  CHECK(std::abs(partial.overlaps[0].first - cplx(0.5, 0.0)) < 1e-9);
  CHECK(std::abs(partial.overlaps[0].second - cplx(0.75, 0.0)) < 1e-9);
  const BoundaryIntersections inner = boundary_intersections(s1, s3);
  REQUIRE(inner.overlaps.size() == 1);  // s3 sits inside s1
  CHECK(std::abs(inner.overlaps[0].first - cplx(0.25, 0.0)) < 1e-9);
  CHECK(std::abs(inner.overlaps[0].second - cplx(0.75, 0.0)) < 1e-9);
}

TEST_CASE("common_supporting_angle on the square/disc crossings") {
  const ConvexRegion square = build_region(roots_of_unity(4), test::unit_weight(4, 0), 4096);
  const ConvexRegion disc = build_region(disc095(), {1, 0}, 4096);
  const BoundaryIntersections bi = boundary_intersections(square, disc);
  REQUIRE(bi.points.size() == 8);

  // pick the consecutive triple straddling direction theta = 0
  std::vector<cplx> pts = bi.points;
  std::sort(pts.begin(), pts.end(),
            [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
  // points sorted by argument; the two nearest the positive real axis
  cplx below, above;
  double best_b = -10, best_a = 10;
  for (const cplx& p : pts) {
    const double t = std::arg(p);
    if (t < 0 && t > best_b) {
      best_b = t;
      below = p;
    }
    if (t > 0 && t < best_a) {
      best_a = t;
      above = p;
    }
  }
  cplx next_above;  // the crossing after `above` in ccw order
  double best_na = 10;
  for (const cplx& p : pts) {
    const double t = std::arg(p);
    if (t > best_a + 1e-9 && t < best_na) {
      best_na = t;
      next_above = p;
    }
  }

  const CommonSupportAngle csa =
      common_supporting_angle(roots_of_unity(4), test::unit_weight(4, 0), disc095(), {1, 0},
                              below, above, next_above);
  CHECK(std::abs(csa.gap) <= 1e-9);
  const double delta = std::acos(0.95);
  const bool at_expected = std::abs(csa.phi - delta) < 1e-6 ||
                           std::abs(csa.phi - (2 * kPi - delta)) < 1e-6;
  CHECK(at_expected);
  // the returned angle must sit inside [omega2, omega1] circularly
  const double rel = std::fmod(csa.phi - csa.omega2 + 2 * kPi, 2 * kPi);
  const double len = std::fmod(csa.omega1 - csa.omega2 + 2 * kPi, 2 * kPi);
  CHECK(rel <= len + 1e-9);
}

TEST_CASE("common_supporting_angle with identical supports returns the arc midpoint") {
  const ComplexMatrix a = roots_of_unity(4);
  const WeightVector e1 = test::unit_weight(4, 0);
  const ConvexRegion r = build_region(a, e1, 512);
  const auto& v = r.vertices();
  REQUIRE(v.size() >= 3);
  const CommonSupportAngle csa = common_supporting_angle(a, e1, a, e1, v[0], v[1], v[2]);
  CHECK(csa.gap == 0.0);
  const double rel = std::fmod(csa.phi - csa.omega2 + 2 * kPi, 2 * kPi);
  const double len = std::fmod(csa.omega1 - csa.omega2 + 2 * kPi, 2 * kPi);
  CHECK(std::abs(rel - 0.5 * len) < 1e-9);
}

TEST_CASE("detect_sharp_points: square corners, smooth disc, segment ends") {
  const ConvexRegion square = build_region(roots_of_unity(4), test::unit_weight(4, 0), 4096);
  const auto sq = detect_sharp_points(square, roots_of_unity(4), test::unit_weight(4, 0), 4096);
  REQUIRE(sq.size() == 4);
  std::vector<cplx> locs;
  for (const SharpPoint& s : sq) {
    locs.push_back(s.location);
    CHECK(std::abs((s.theta_hi - s.theta_lo) - kPi / 2) < 0.01);
  }
  CHECK(test::multiset_close(locs, {1.0, I, -1.0, -I}, 1e-6));

  const ConvexRegion disc = build_region(j2(), {1, 0}, 4096);
  CHECK(detect_sharp_points(disc, j2(), {1, 0}, 4096).empty());

  const ComplexMatrix herm = ComplexMatrix::diagonal({3.0, 1.0});
  const ConvexRegion seg = build_region(herm, {1, 0}, 256);
  const auto ends = detect_sharp_points(seg, herm, WeightVector({1, 0}), 256);
  REQUIRE(ends.size() == 2);
  for (const SharpPoint& s : ends) CHECK(std::abs((s.theta_hi - s.theta_lo) - kPi) < 1e-9);
  CHECK(test::multiset_close({ends[0].location, ends[1].location}, {1.0, 3.0}, 1e-9));
}

TEST_CASE("fit_circle: symmetric triple and the J3 boundary") {
  const std::vector<cplx> tri = {std::polar(1.0, 0.0), std::polar(1.0, 2 * kPi / 3),
                                 std::polar(1.0, 4 * kPi / 3)};
  const ArcFit f = fit_circle(tri);
  CHECK(std::abs(f.center) < 1e-12);
  CHECK(f.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);

  const ComplexMatrix j3 = test::jordan_block(3);
  const std::vector<cplx> pts = sample_boundary(j3, test::unit_weight(3, 0), 64);
  const ArcFit fj = fit_circle(pts);
  CHECK(std::abs(fj.center) <= 1e-4);
  CHECK(std::abs(fj.radius - std::cos(kPi / 4)) <= 1e-4);

  const std::vector<cplx> line = {0.0, 1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)fit_circle(line), DegenerateConfiguration);
}

TEST_CASE("fit_ellipse: synthetic conic and the 2x2 elliptical range") {
  std::vector<cplx> pts;
  const cplx center(0.4, -0.2);
  for (int k = 0; k < 16; ++k) {
    const double t = 2 * kPi * k / 16;
    pts.push_back(center + cplx(2.0 * std::cos(t), 0.0) + cplx(0.0, 1.0 * std::sin(t)));
  }
  const ArcFit f = fit_ellipse(pts);
  CHECK(std::abs(f.center - center) < 1e-9);
  CHECK(f.semi_major == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(f.semi_minor == doctest::Approx(1.0).epsilon(1e-9));
  const double fd = std::sqrt(3.0);
  CHECK(std::abs(f.focus1 - (center - fd)) < 1e-8);
  CHECK(std::abs(f.focus2 - (center + fd)) < 1e-8);

  // W([[0,1],[0,2]]) is an elliptical disc with foci at the eigenvalues 0, 2
  ComplexMatrix el(2);
  el(0, 1) = 1.0;
  el(1, 1) = 2.0;
  const ArcFit fe = fit_ellipse(sample_boundary(el, test::unit_weight(2, 0), 64));
  CHECK(std::abs(fe.focus1 - cplx(0.0, 0.0)) <= 1e-4);
  CHECK(std::abs(fe.focus2 - cplx(2.0, 0.0)) <= 1e-4);

  // circle as the degenerate ellipse: both foci collapse to the center
  const ArcFit fc = fit_ellipse(sample_boundary(j2(), {1, 0}, 64));
  CHECK(std::abs(fc.focus1) <= 1e-6);
  CHECK(std::abs(fc.focus2) <= 1e-6);
}

TEST_CASE("region_hausdorff basics") {
  const ConvexRegion a = build_region(j2(), {1, 0}, 512);
  CHECK(region_hausdorff(a, a) == 0.0);
  const ConvexRegion b = build_region(cplx(2.0, 0.0) * j2(), {1, 0}, 512);
  CHECK(region_hausdorff(a, b) == doctest::Approx(0.5).epsilon(1e-3));
}
