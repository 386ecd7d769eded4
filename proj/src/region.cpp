#include "wnr/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace wnr {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

double dot2(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }
double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double norm_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = dot2(p - a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// ---------------------------------------------------------------------------
// Half-plane intersection
// ---------------------------------------------------------------------------

struct Line {
  cplx n;       // outward unit normal, dot(v, n) <= off
  double off;
  double ang;   // direction angle of the boundary, interior on the left
};

Line make_line(const HalfPlane& hp) {
  const cplx n(std::cos(hp.theta), -std::sin(hp.theta));
  const cplx d = cplx(0.0, 1.0) * n;
  return {n, hp.offset, std::atan2(d.imag(), d.real())};
}

cplx line_inter(const Line& l1, const Line& l2) {
  double det = cross2(l1.n, l2.n);
  if (det == 0.0) det = 1e-300;  // antiparallel survivors; adjudicated later
  return {(l1.off * l2.n.imag() - l2.off * l1.n.imag()) / det,
          (l1.n.real() * l2.off - l2.n.real() * l1.off) / det};
}

bool line_out(const Line& l, cplx p) { return dot2(p, l.n) > l.off; }

// Classic sorted-by-angle deque intersection. Returns false when the deque
// collapses (infeasible as far as it can tell).
bool deque_intersection(const std::vector<Line>& lines, std::vector<cplx>& verts) {
  std::deque<Line> dq;
  for (const Line& l : lines) {
    while (dq.size() >= 2 && line_out(l, line_inter(dq[dq.size() - 2], dq.back()))) dq.pop_back();
    while (dq.size() >= 2 && line_out(l, line_inter(dq[0], dq[1]))) dq.pop_front();
    dq.push_back(l);
  }
  while (dq.size() >= 3 && line_out(dq.front(), line_inter(dq[dq.size() - 2], dq.back())))
    dq.pop_back();
  while (dq.size() >= 3 && line_out(dq.back(), line_inter(dq[0], dq[1]))) dq.pop_front();
  if (dq.size() < 3) return false;
  verts.clear();
  for (std::size_t i = 0; i < dq.size(); ++i)
    verts.push_back(line_inter(dq[i], dq[(i + 1) % dq.size()]));
  return true;
}

// Sutherland-Hodgman clipping from a bounding box; robust against exactly
// degenerate (zero-width) intersections, used to adjudicate the deque result.
bool clip_intersection(const std::vector<Line>& lines, double box_r, std::vector<cplx>& verts) {
  verts = {cplx(box_r, -box_r), cplx(box_r, box_r), cplx(-box_r, box_r), cplx(-box_r, -box_r)};
  std::vector<cplx> next;
  for (const Line& l : lines) {
    next.clear();
    const std::size_t m = verts.size();
    for (std::size_t i = 0; i < m; ++i) {
      const cplx a = verts[i];
      const cplx b = verts[(i + 1) % m];
      const bool ina = !line_out(l, a);
      const bool inb = !line_out(l, b);
      if (ina) next.push_back(a);
      if (ina != inb) {
        const double da = dot2(a, l.n) - l.off;
        const double db = dot2(b, l.n) - l.off;
        next.push_back(a + (da / (da - db)) * (b - a));
      }
    }
    verts = next;
    if (verts.empty()) return false;
  }
  return verts.size() >= 1;
}

std::vector<cplx> merge_duplicates(std::vector<cplx> v, double scale) {
  const double merge_tol = 1e-9 * scale;
  std::vector<cplx> merged;
  for (const cplx& p : v) {
    if (!merged.empty() && std::abs(p - merged.back()) < merge_tol) {
      merged.back() = 0.5 * (merged.back() + p);
      continue;
    }
    merged.push_back(p);
  }
  while (merged.size() >= 2 && std::abs(merged.front() - merged.back()) < merge_tol) {
    merged.front() = 0.5 * (merged.front() + merged.back());
    merged.pop_back();
  }
  return merged;
}

// Drop collinear / inward-wiggle vertices. Only valid on loops already known
// to be 2-dimensional: on a flat loop this would eat real endpoints.
std::vector<cplx> drop_collinear(std::vector<cplx> merged, double scale) {
  const double collinear_tol = 1e-12 * scale * scale;
  bool changed = true;
  while (changed && merged.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < merged.size() && merged.size() >= 3; ++i) {
      const cplx prev = merged[(i + merged.size() - 1) % merged.size()];
      const cplx cur = merged[i];
      const cplx next = merged[(i + 1) % merged.size()];
      if (cross2(cur - prev, next - cur) <= collinear_tol) {
        merged.erase(merged.begin() + long(i));
        changed = true;
        break;
      }
    }
  }
  return merged;
}

double loop_area(const std::vector<cplx>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross2(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

ConvexRegion classify(std::vector<cplx> verts, double scale_hint) {
  double vmax = 0.0;
  for (const cplx& p : verts) vmax = std::max(vmax, std::abs(p));
  const double scale = 1.0 + std::max(scale_hint, vmax);

  if (verts.empty()) return ConvexRegion({}, RegionKind::Empty, scale);

  cplx mean = 0.0;
  for (const cplx& p : verts) mean += p;
  mean /= double(verts.size());

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const cplx& p : verts) {
    const cplx q = p - mean;
    sxx += q.real() * q.real();
    sxy += q.real() * q.imag();
    syy += q.imag() * q.imag();
  }
  const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const cplx umaj(std::cos(phi), std::sin(phi));
  const cplx umin(-std::sin(phi), std::cos(phi));
  double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
  for (const cplx& p : verts) {
    const cplx q = p - mean;
    lo1 = std::min(lo1, dot2(q, umaj));
    hi1 = std::max(hi1, dot2(q, umaj));
    lo2 = std::min(lo2, dot2(q, umin));
    hi2 = std::max(hi2, dot2(q, umin));
  }
  double ext_major = hi1 - lo1, ext_minor = hi2 - lo2;
  cplx dir = umaj;
  double dlo = lo1, dhi = hi1;
  if (ext_minor > ext_major) {
    std::swap(ext_major, ext_minor);
    dir = umin;
    dlo = lo2;
    dhi = hi2;
  }

  const double width_tol = 1e-9 * scale;
  if (ext_major < width_tol) return ConvexRegion({mean}, RegionKind::Point, scale);
  const double area = verts.size() >= 3 ? std::abs(loop_area(verts)) : 0.0;
  if (ext_minor < width_tol || area < 1e-12 * scale * scale)
    return ConvexRegion({mean + dlo * dir, mean + dhi * dir}, RegionKind::Segment, scale);
  std::vector<cplx> cleaned = drop_collinear(verts, scale);
  if (cleaned.size() < 3)  // borderline-flat loop: keep the segment reading
    return ConvexRegion({mean + dlo * dir, mean + dhi * dir}, RegionKind::Segment, scale);
  return ConvexRegion(std::move(cleaned), RegionKind::Full2D, scale);
}

}  // namespace

namespace detail {

ConvexRegion intersect_half_planes(const std::vector<HalfPlane>& planes, double scale_hint) {
  if (planes.size() < 3) throw Error("intersect_half_planes needs at least 3 half-planes");

  double max_off = 0.0;
  for (const HalfPlane& hp : planes) max_off = std::max(max_off, std::abs(hp.offset));
  const double scale_work = 1.0 + std::max(scale_hint, max_off);

  // Inflate every offset a hair so exactly degenerate intersections (real
  // segments, points) survive as representable slivers.
  const double inflate = 1e-13 * scale_work;
  const double box_r = 2.0 + 4.0 * std::max(1.0, max_off);

  std::vector<Line> lines;
  lines.reserve(planes.size() + 4);
  for (const HalfPlane& hp : planes) lines.push_back(make_line({hp.theta, hp.offset + inflate}));
  for (int k = 0; k < 4; ++k) lines.push_back(make_line({0.5 * kPi * k, box_r}));

  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.ang < b.ang; });
  std::vector<Line> uniq;
  for (const Line& l : lines) {
    if (!uniq.empty() && std::abs(l.ang - uniq.back().ang) < 1e-12) {
      if (l.off < uniq.back().off) uniq.back() = l;
      continue;
    }
    uniq.push_back(l);
  }

  std::vector<cplx> verts;
  bool ok = deque_intersection(uniq, verts);
  if (ok) {
    // every reported vertex must satisfy every half-plane
    const double viol_tol = 1e-7 * scale_work;
    for (const cplx& p : verts) {
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
        ok = false;
        break;
      }
      for (const Line& l : uniq) {
        if (dot2(p, l.n) > l.off + viol_tol) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
  }
  if (!ok) {
    // adjudicate with the clipper; it handles collapse and infeasibility
    if (!clip_intersection(uniq, box_r, verts)) return classify({}, scale_hint);
  }
  return classify(merge_duplicates(std::move(verts), scale_work), scale_hint);
}

ConvexRegion build_region_sampled(const ComplexMatrix& a, const WeightVector& c, int grid_n,
                                  bool refine_kinks) {
  if (grid_n < 64) throw Error("build_region needs gridN >= 64");
  if (a.dim() != c.dim()) throw DimensionMismatch("build_region: weight/matrix dimensions differ");

  const double dtheta = kTwoPi / grid_n;
  std::vector<double> h(static_cast<std::size_t>(grid_n));
  for (int k = 0; k < grid_n; ++k) h[std::size_t(k)] = weighted_support(a, c, dtheta * k);

  std::vector<HalfPlane> planes;
  planes.reserve(std::size_t(grid_n) + 64);
  for (int k = 0; k < grid_n; ++k) planes.push_back({dtheta * k, h[std::size_t(k)]});

  if (refine_kinks) {
    double hmax = 0.0;
    for (double v : h) hmax = std::max(hmax, std::abs(v));
    const double scale_h = 1.0 + hmax;
    const double jump_tol = 10.0 * dtheta * scale_h;

    // One-sided slope jumps flag support kinks (facet normals). A constraint
    // placed at the kink angle carries the facet line itself, which the
    // uniform grid straddles but never contains.
    const auto slope = [&](int k) {
      const int k0 = (k % grid_n + grid_n) % grid_n;
      const int k1 = (k0 + 1) % grid_n;
      return (h[std::size_t(k1)] - h[std::size_t(k0)]) / dtheta;
    };
    std::vector<char> flagged(std::size_t(grid_n), 0);
    for (int k = 0; k < grid_n; ++k)
      if (std::abs(slope(k) - slope(k - 1)) > jump_tol) flagged[std::size_t(k)] = 1;

    std::vector<double> kink_angles;
    int candidates = 0;
    for (int s = 0; s < grid_n && candidates < 512; ++s) {
      if (!flagged[std::size_t(s)] || flagged[std::size_t((s + grid_n - 1) % grid_n)]) continue;
      int len = 1;
      while (len < grid_n && flagged[std::size_t((s + len) % grid_n)]) ++len;
      ++candidates;
      double lo = dtheta * (s - 1);
      double hi = dtheta * (s + len);
      cplx wl = support_point(a, c, lo);
      cplx wr = support_point(a, c, hi);
      if (std::abs(wl - wr) < 1e-9 * scale_h) continue;  // contact never moved: no facet
      for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const cplx wm = support_point(a, c, mid);
        if (std::abs(wm - wl) <= std::abs(wm - wr))
          lo = mid;
        else
          hi = mid;
      }
      kink_angles.push_back(norm_angle(0.5 * (lo + hi)));
    }
    std::sort(kink_angles.begin(), kink_angles.end());
    for (double t : kink_angles) {
      const double nearest_grid = std::round(t / dtheta) * dtheta;
      if (std::abs(t - nearest_grid) < 1e-7) continue;  // grid already pins this line
      planes.push_back({t, weighted_support(a, c, t)});
    }
  }

  return intersect_half_planes(planes, a.max_abs());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ConvexRegion methods
// ---------------------------------------------------------------------------

double ConvexRegion::area() const {
  if (verts_.size() < 3) return 0.0;
  return std::abs(loop_area(verts_));
}

double ConvexRegion::diameter() const {
  const std::size_t m = verts_.size();
  if (m <= 1) return 0.0;
  if (m == 2) return std::abs(verts_[0] - verts_[1]);
  // rotating calipers on the ccw polygon
  double best = 0.0;
  std::size_t j = 1;
  const auto tri2 = [&](std::size_t p, std::size_t q, std::size_t r) {
    return std::abs(cross2(verts_[q] - verts_[p], verts_[r] - verts_[p]));
  };
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t i1 = (i + 1) % m;
    while (tri2(i, i1, (j + 1) % m) > tri2(i, i1, j)) j = (j + 1) % m;
    best = std::max({best, std::abs(verts_[i] - verts_[j]), std::abs(verts_[i1] - verts_[j])});
  }
  return best;
}

bool ConvexRegion::contains(cplx p, double slack) const {
  switch (kind_) {
    case RegionKind::Empty:
      return false;
    case RegionKind::Point:
      return std::abs(p - verts_[0]) <= slack;
    case RegionKind::Segment:
      return point_segment_distance(p, verts_[0], verts_[1]) <= slack;
    case RegionKind::Full2D:
      break;
  }
  const std::size_t m = verts_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const cplx e = verts_[(i + 1) % m] - verts_[i];
    const double elen = std::abs(e);
    if (elen == 0.0) continue;
    if (cross2(e, p - verts_[i]) < -slack * elen) return false;
  }
  return true;
}

double ConvexRegion::distance(cplx p) const {
  if (kind_ == RegionKind::Empty) return std::numeric_limits<double>::infinity();
  if (kind_ == RegionKind::Full2D && contains(p, 0.0)) return 0.0;
  return boundary_distance(p);
}

double ConvexRegion::boundary_distance(cplx p) const {
  if (kind_ == RegionKind::Empty) return std::numeric_limits<double>::infinity();
  if (verts_.size() == 1) return std::abs(p - verts_[0]);
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = verts_.size();
  const std::size_t edges = kind_ == RegionKind::Segment ? 1 : m;
  for (std::size_t i = 0; i < edges; ++i)
    best = std::min(best, point_segment_distance(p, verts_[i], verts_[(i + 1) % m]));
  return best;
}

// ---------------------------------------------------------------------------
// Region constructions
// ---------------------------------------------------------------------------

ConvexRegion build_region(const ComplexMatrix& a, const WeightVector& c, int grid_n) {
  if (grid_n < 64) throw Error("build_region needs gridN >= 64");
  if (a.dim() != c.dim()) throw DimensionMismatch("build_region: weight/matrix dimensions differ");

  if (a.is_hermitian()) {
    // Exact route: the region is a real segment (possibly a point or empty),
    // which grid-sampled half-planes can only approximate as a sliver.
    const RealInterval seg = hermitian_segment(a, c);
    const double scale = 1.0 + std::max({a.max_abs(), std::abs(seg.lo), std::abs(seg.hi)});
    if (seg.empty) return ConvexRegion({}, RegionKind::Empty, scale);
    if (seg.hi - seg.lo < 1e-9 * scale)
      return ConvexRegion({cplx(0.5 * (seg.lo + seg.hi), 0.0)}, RegionKind::Point, scale);
    return ConvexRegion({cplx(seg.lo, 0.0), cplx(seg.hi, 0.0)}, RegionKind::Segment, scale);
  }
  return detail::build_region_sampled(a, c, grid_n, true);
}

bool is_empty(const ConvexRegion& r) { return r.empty(); }

RealInterval hermitian_segment(const ComplexMatrix& a, const WeightVector& c) {
  if (a.dim() != c.dim())
    throw DimensionMismatch("hermitian_segment: weight/matrix dimensions differ");
  const HermitianMatrix h(a);  // throws NotHermitian
  const std::vector<double> lam = eig_hermitian_values(h);
  const int n = a.dim();
  double hi = 0.0, lo = 0.0;
  for (int j = 0; j < n; ++j) {
    hi += c[j] * lam[std::size_t(j)];
    lo += c[n - 1 - j] * lam[std::size_t(j)];
  }
  return {lo, hi, lo > hi};
}

ConvexRegion polygon_for_normal(const ComplexMatrix& a, const WeightVector& c) {
  if (a.dim() != c.dim())
    throw DimensionMismatch("polygon_for_normal: weight/matrix dimensions differ");
  if (a.dim() > 8) throw DimensionTooLarge("polygon_for_normal is limited to n <= 8");
  if (!a.is_normal()) throw NotNormal("polygon_for_normal requires a normal matrix");

  const Spectrum sp = eig_general(a);
  const int n = a.dim();
  double mu_max = 0.0;
  for (const cplx& mu : sp.eigenvalues) mu_max = std::max(mu_max, std::abs(mu));

  // Angles where the descending order of Re(e^{i theta} mu_j) switches,
  // plus the four cardinal directions to keep every sector below pi.
  std::vector<double> angles = {0.0, 0.5 * kPi, kPi, 1.5 * kPi};
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const cplx d = sp.eigenvalues[std::size_t(j)] - sp.eigenvalues[std::size_t(k)];
      if (std::abs(d) <= 1e-12 * (1.0 + mu_max)) continue;
      const double t = norm_angle(0.5 * kPi - std::arg(d));
      angles.push_back(t);
      angles.push_back(norm_angle(t + kPi));
    }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-12; }),
               angles.end());

  std::vector<HalfPlane> planes;
  std::vector<double> proj(static_cast<std::size_t>(n));
  for (double theta : angles) {
    for (int j = 0; j < n; ++j)
      proj[std::size_t(j)] = (std::polar(1.0, theta) * sp.eigenvalues[std::size_t(j)]).real();
    std::sort(proj.begin(), proj.end(), std::greater<double>());
    double off = 0.0;
    for (int j = 0; j < n; ++j) off += c[j] * proj[std::size_t(j)];
    planes.push_back({theta, off});
  }
  return detail::intersect_half_planes(planes, a.max_abs());
}

// ---------------------------------------------------------------------------
// Boundary crossings of two regions
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<cplx, cplx>> region_edges(const ConvexRegion& r) {
  std::vector<std::pair<cplx, cplx>> edges;
  const auto& v = r.vertices();
  if (r.kind() == RegionKind::Segment) {
    edges.emplace_back(v[0], v[1]);
    edges.emplace_back(v[1], v[0]);
  } else if (r.kind() == RegionKind::Full2D) {
    for (std::size_t i = 0; i < v.size(); ++i) edges.emplace_back(v[i], v[(i + 1) % v.size()]);
  }
  return edges;
}

}  // namespace

BoundaryIntersections boundary_intersections(const ConvexRegion& r1, const ConvexRegion& r2) {
  BoundaryIntersections out;
  if (r1.empty() || r2.empty()) return out;

  const double scale = std::max(r1.scale(), r2.scale());
  if (region_hausdorff(r1, r2) <= 1e-9 * scale) {
    out.full_overlap = true;
    return out;
  }

  const auto e1 = region_edges(r1);
  const auto e2 = region_edges(r2);
  struct Hit {
    double pos;  // position along r1's boundary, for ccw ordering
    cplx p;
  };
  std::vector<Hit> hits;

  for (std::size_t i = 0; i < e1.size(); ++i) {
    const cplx a = e1[i].first, b = e1[i].second, d1 = b - a;
    for (const auto& [p, q] : e2) {
      const cplx d2 = q - p;
      const double denom = cross2(d1, d2);
      const double par_tol = 1e-12 * std::abs(d1) * std::abs(d2);
      if (std::abs(denom) <= par_tol) {
        // parallel; collinear stretches become overlap records
        const double len1 = std::abs(d1);
        if (len1 == 0.0 || std::abs(cross2(d1, p - a)) / len1 > 1e-9 * scale ||
            std::abs(cross2(d1, q - a)) / len1 > 1e-9 * scale)
          continue;
        const double len2 = std::norm(d1);
        double t0 = dot2(p - a, d1) / len2;
        double t1 = dot2(q - a, d1) / len2;
        if (t0 > t1) std::swap(t0, t1);
        t0 = std::max(t0, 0.0);
        t1 = std::min(t1, 1.0);
        if ((t1 - t0) * len1 > 1e-9 * scale)
          out.overlaps.emplace_back(a + t0 * d1, a + t1 * d1);
        continue;
      }
      const double t = cross2(p - a, d2) / denom;
      const double s = cross2(p - a, d1) / denom;
      if (t < -1e-12 || t > 1.0 + 1e-12 || s < -1e-12 || s > 1.0 + 1e-12) continue;
      hits.push_back({double(i) + std::clamp(t, 0.0, 1.0), a + t * d1});
    }
  }

  // canonicalize and dedup overlap records (each shows up once per direction)
  for (auto& [p, q] : out.overlaps)
    if (q.real() < p.real() || (q.real() == p.real() && q.imag() < p.imag())) std::swap(p, q);
  std::sort(out.overlaps.begin(), out.overlaps.end(), [](const auto& x, const auto& y) {
    return std::make_pair(x.first.real(), x.first.imag()) <
           std::make_pair(y.first.real(), y.first.imag());
  });
  const double dedup = 1e-8 * scale;
  std::vector<std::pair<cplx, cplx>> uniq_overlaps;
  for (const auto& ov : out.overlaps) {
    bool dup = false;
    for (const auto& u : uniq_overlaps)
      if (std::abs(ov.first - u.first) < dedup && std::abs(ov.second - u.second) < dedup) {
        dup = true;
        break;
      }
    if (!dup) uniq_overlaps.push_back(ov);
  }
  out.overlaps = std::move(uniq_overlaps);

  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.pos < y.pos; });
  std::vector<Hit> uniq;
  for (const Hit& h : hits) {
    bool dup = false;
    for (const Hit& u : uniq)
      if (std::abs(h.p - u.p) < dedup) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(h);
  }
  for (const Hit& h : uniq) {
    bool inside_overlap = false;
    for (const auto& [p, q] : out.overlaps)
      if (point_segment_distance(h.p, p, q) < dedup) {
        inside_overlap = true;
        break;
      }
    if (!inside_overlap) out.points.push_back(h.p);
  }
  return out;
}

CommonSupportAngle common_supporting_angle(const ComplexMatrix& a, const WeightVector& c,
                                           const ComplexMatrix& b, const WeightVector& d, cplx z1,
                                           cplx z2, cplx z3) {
  const double scale = 1.0 + std::max({std::abs(z1), std::abs(z2), std::abs(z3)});
  if (cross2(z2 - z1, z3 - z2) < -1e-6 * scale * scale)
    throw Error("common_supporting_angle: points are not in counterclockwise order");

  const double omega1 = norm_angle(std::arg(cplx(0.0, 1.0) * std::conj(z2 - z1)));
  const double omega2 = norm_angle(std::arg(cplx(0.0, 1.0) * std::conj(z3 - z2)));
  double len = norm_angle(omega1 - omega2);
  if (len == 0.0) len = kTwoPi;  // degenerate triple: whole circle admissible

  const auto gap_at = [&](double t) { return support_gap(a, c, b, d, norm_angle(t)); };

  const int m = 65;
  std::vector<double> g(static_cast<std::size_t>(m));
  bool all_zero = true;
  double best_gap = std::numeric_limits<double>::infinity();
  double best_angle = omega2;
  for (int i = 0; i < m; ++i) {
    const double t = omega2 + len * i / (m - 1);
    g[std::size_t(i)] = gap_at(t);
    if (std::abs(g[std::size_t(i)]) >= 1e-12) all_zero = false;
    if (std::abs(g[std::size_t(i)]) < best_gap) {
      best_gap = std::abs(g[std::size_t(i)]);
      best_angle = norm_angle(t);
    }
  }
  CommonSupportAngle out;
  out.omega1 = omega1;
  out.omega2 = omega2;
  if (all_zero) {  // identical supports on the arc: report the midpoint
    out.phi = norm_angle(omega2 + 0.5 * len);
    out.gap = 0.0;
    return out;
  }

  int bracket = -1;
  for (int i = 0; i + 1 < m; ++i)
    if (g[std::size_t(i)] == 0.0 || g[std::size_t(i)] * g[std::size_t(i + 1)] < 0.0) {
      bracket = i;
      break;
    }
  if (bracket < 0)
    throw NoSignChange("support gap does not straddle zero on [omega2, omega1]", best_angle,
                       best_gap);

  double lo = omega2 + len * bracket / (m - 1);
  double hi = omega2 + len * (bracket + 1) / (m - 1);
  double glo = g[std::size_t(bracket)];
  double phi = lo, gphi = glo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gap_at(mid);
    phi = mid;
    gphi = gm;
    if (std::abs(gm) <= 1e-9 || hi - lo < 1e-15) break;
    if (glo * gm < 0.0)
      hi = mid;
    else {
      lo = mid;
      glo = gm;
    }
  }
  out.phi = norm_angle(phi);
  out.gap = gphi;
  const double to1 = std::min(norm_angle(out.phi - omega1), norm_angle(omega1 - out.phi));
  const double to2 = std::min(norm_angle(out.phi - omega2), norm_angle(omega2 - out.phi));
  out.boundary_segment_case = std::min(to1, to2) <= 1e-9;
  return out;
}

// ---------------------------------------------------------------------------
// Sharp points
// ---------------------------------------------------------------------------

std::vector<SharpPoint> detect_sharp_points(const ConvexRegion& r, const ComplexMatrix& a,
                                            const WeightVector& c, int grid_n) {
  std::vector<SharpPoint> out;
  if (r.empty()) return out;

  if (r.kind() == RegionKind::Point) {
    out.push_back({r.vertices()[0], 0.0, kTwoPi});
    return out;
  }
  if (r.kind() == RegionKind::Segment) {
    const cplx v0 = r.vertices()[0], v1 = r.vertices()[1];
    const double adir = std::arg(v1 - v0);
    // supporting normals e^{-i theta}: the far endpoint sees the half circle
    // of normals with positive component along the segment direction
    out.push_back({v1, norm_angle(-adir - 0.5 * kPi), norm_angle(-adir - 0.5 * kPi) + kPi});
    out.push_back({v0, norm_angle(kPi - adir - 0.5 * kPi), norm_angle(kPi - adir - 0.5 * kPi) + kPi});
    return out;
  }

  const double dtheta = kTwoPi / grid_n;
  std::vector<cplx> p(static_cast<std::size_t>(grid_n));
  for (int k = 0; k < grid_n; ++k) p[std::size_t(k)] = support_point(a, c, dtheta * k);

  const double station_tol = 1e-7 * r.scale();
  const auto stationary = [&](int k) {
    return std::abs(p[std::size_t((k + 1) % grid_n)] - p[std::size_t(k % grid_n)]) < station_tol;
  };
  // circular runs of stationary contact
  for (int s = 0; s < grid_n; ++s) {
    if (!stationary(s) || stationary((s + grid_n - 1) % grid_n)) continue;
    int len = 1;
    while (len < grid_n - 1 && stationary(s + len)) ++len;
    const double width = len * dtheta;
    if (width <= 1e-3) continue;
    cplx loc = 0.0;
    for (int i = 0; i <= len; ++i) loc += p[std::size_t((s + i) % grid_n)];
    loc /= double(len + 1);
    out.push_back({loc, dtheta * s, dtheta * s + width});
  }
  std::sort(out.begin(), out.end(),
            [](const SharpPoint& x, const SharpPoint& y) { return x.theta_lo < y.theta_lo; });
  return out;
}

// ---------------------------------------------------------------------------
// Circle / ellipse fits
// ---------------------------------------------------------------------------

namespace {

void require_spread(std::span<const cplx> pts, std::size_t min_count) {
  if (pts.size() < min_count)
    throw DegenerateConfiguration("not enough points for the fit");
  cplx mean = 0.0;
  for (const cplx& p : pts) mean += p;
  mean /= double(pts.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const cplx& p : pts) {
    const cplx q = p - mean;
    sxx += q.real() * q.real();
    sxy += q.real() * q.imag();
    syy += q.imag() * q.imag();
  }
  const double tr = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  // smaller principal variance; zero means collinear points
  const double lam_min = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
  if (lam_min <= 1e-20 * std::max(1.0, tr))
    throw DegenerateConfiguration("points are collinear");
}

// Solve a small linear system in place (partial pivoting).
template <int N>
std::array<double, N> solve_linear(std::array<std::array<double, N>, N> m,
                                   std::array<double, N> rhs) {
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-300) throw DegenerateConfiguration("singular fit system");
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int k = col; k < N; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::array<double, N> x{};
  for (int i = 0; i < N; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

}  // namespace

ArcFit fit_circle(std::span<const cplx> points) {
  require_spread(points, 3);
  cplx mean = 0.0;
  for (const cplx& p : points) mean += p;
  mean /= double(points.size());

  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
  for (const cplx& p : points) {
    const double x = p.real() - mean.real(), y = p.imag() - mean.imag();
    const double z = x * x + y * y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    sx += x;
    sy += y;
    sxz += x * z;
    syz += y * z;
    sz += z;
  }
  const double m = double(points.size());
  const auto sol = solve_linear<3>({{{sxx, sxy, sx}, {sxy, syy, sy}, {sx, sy, m}}},
                                   {-sxz, -syz, -sz});
  const double dd = sol[0], ee = sol[1], ff = sol[2];
  const double r2 = 0.25 * (dd * dd + ee * ee) - ff;
  if (!(r2 > 0.0)) throw DegenerateConfiguration("circle fit collapsed");

  ArcFit fit;
  fit.kind = ArcFit::Kind::Circle;
  fit.center = mean + cplx(-0.5 * dd, -0.5 * ee);
  fit.radius = std::sqrt(r2);
  double ss = 0.0;
  for (const cplx& p : points) {
    const double e = std::abs(p - fit.center) - fit.radius;
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

ArcFit fit_ellipse(std::span<const cplx> points) {
  require_spread(points, 5);
  cplx mean = 0.0;
  for (const cplx& p : points) mean += p;
  mean /= double(points.size());
  double s = 0.0;
  for (const cplx& p : points) s += std::abs(p - mean);
  s /= double(points.size());
  if (s <= 0.0) throw DegenerateConfiguration("degenerate point cloud");

  // scatter blocks over normalized coordinates
  double s1[3][3] = {}, s2[3][3] = {}, s3[3][3] = {};
  for (const cplx& p : points) {
    const double x = (p.real() - mean.real()) / s, y = (p.imag() - mean.imag()) / s;
    const double d1[3] = {x * x, x * y, y * y};
    const double d2[3] = {x, y, 1.0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        s1[i][j] += d1[i] * d1[j];
        s2[i][j] += d1[i] * d2[j];
        s3[i][j] += d2[i] * d2[j];
      }
  }
  // T = -S3^{-1} S2^T, column by column
  double tmat[3][3];
  for (int col = 0; col < 3; ++col) {
    const auto x = solve_linear<3>(
        {{{s3[0][0], s3[0][1], s3[0][2]},
          {s3[1][0], s3[1][1], s3[1][2]},
          {s3[2][0], s3[2][1], s3[2][2]}}},
        {-s2[col][0], -s2[col][1], -s2[col][2]});
    for (int r = 0; r < 3; ++r) tmat[r][col] = x[std::size_t(r)];
  }
  // M = C1^{-1} (S1 + S2 T), with C1^{-1} = [[0,0,.5],[0,-1,0],[.5,0,0]]
  double red[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = s1[i][j];
      for (int k = 0; k < 3; ++k) v += s2[i][k] * tmat[k][j];
      red[i][j] = v;
    }
  double mm[3][3];
  for (int j = 0; j < 3; ++j) {
    mm[0][j] = 0.5 * red[2][j];
    mm[1][j] = -red[1][j];
    mm[2][j] = 0.5 * red[0][j];
  }

  ComplexMatrix mc(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mc(i, j) = mm[i][j];
  const Spectrum sp = eig_general(mc);

  // pick the eigenvector with 4ac - b^2 > 0 (the ellipse branch)
  double a1[3] = {0, 0, 0};
  bool found = false;
  for (const cplx& lam : sp.eigenvalues) {
    if (std::abs(lam.imag()) > 1e-6 * (1.0 + std::abs(lam))) continue;
    double g[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[i][j] = mm[i][j] - (i == j ? lam.real() : 0.0);
    // null vector from the largest cross product of two rows
    double best[3] = {0, 0, 0};
    double best_norm = 0.0;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
      const double* r1 = g[pr[0]];
      const double* r2 = g[pr[1]];
      const double cx = r1[1] * r2[2] - r1[2] * r2[1];
      const double cy = r1[2] * r2[0] - r1[0] * r2[2];
      const double cz = r1[0] * r2[1] - r1[1] * r2[0];
      const double nn = cx * cx + cy * cy + cz * cz;
      if (nn > best_norm) {
        best_norm = nn;
        best[0] = cx;
        best[1] = cy;
        best[2] = cz;
      }
    }
    if (best_norm == 0.0) continue;
    const double constraint = 4.0 * best[0] * best[2] - best[1] * best[1];
    if (constraint > 0.0) {
      for (int i = 0; i < 3; ++i) a1[i] = best[i];
      found = true;
      break;
    }
  }
  if (!found) throw DegenerateConfiguration("no ellipse solution for these points");

  double a2[3];
  for (int r = 0; r < 3; ++r)
    a2[r] = tmat[r][0] * a1[0] + tmat[r][1] * a1[1] + tmat[r][2] * a1[2];
  // normalize the sign so the quadratic part is positive definite
  const double flip = (a1[0] + a1[2]) < 0.0 ? -1.0 : 1.0;
  const double ca = flip * a1[0], cb = flip * a1[1], cc = flip * a1[2];
  const double cd = flip * a2[0], ce = flip * a2[1], cf = flip * a2[2];

  // geometric parameters in the normalized frame
  const auto ctr = solve_linear<2>({{{2.0 * ca, cb}, {cb, 2.0 * cc}}}, {-cd, -ce});
  const double x0 = ctr[0], y0 = ctr[1];
  const double g0 = ca * x0 * x0 + cb * x0 * y0 + cc * y0 * y0 + cd * x0 + ce * y0 + cf;
  // eigen of [[a, b/2], [b/2, c]]
  const double tr = ca + cc;
  const double det = ca * cc - 0.25 * cb * cb;
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double lam_big = 0.5 * (tr + disc), lam_small = 0.5 * (tr - disc);
  if (!(lam_big * (-g0) > 0.0) || !(lam_small * (-g0) > 0.0))
    throw DegenerateConfiguration("fitted conic is not an ellipse");
  const double axis_minor = std::sqrt(-g0 / lam_big);
  const double axis_major = std::sqrt(-g0 / lam_small);
  // major-axis direction: eigenvector of the smaller quadratic eigenvalue;
  // pick whichever of the two candidate formulas is better conditioned
  const double v1x = cb * 0.5, v1y = lam_small - ca;
  const double v2x = lam_small - cc, v2y = cb * 0.5;
  double vx = v1x, vy = v1y;
  if (v2x * v2x + v2y * v2y > v1x * v1x + v1y * v1y) {
    vx = v2x;
    vy = v2y;
  }
  if (vx * vx + vy * vy < 1e-280) {  // circle: direction immaterial
    vx = 1.0;
    vy = 0.0;
  }
  const double phi = std::atan2(vy, vx);

  ArcFit fit;
  fit.kind = ArcFit::Kind::Ellipse;
  fit.center = mean + s * cplx(x0, y0);
  fit.semi_major = s * axis_major;
  fit.semi_minor = s * axis_minor;
  const double fdist = std::sqrt(std::max(0.0, fit.semi_major * fit.semi_major -
                                                   fit.semi_minor * fit.semi_minor));
  cplx f1 = fit.center - fdist * std::polar(1.0, phi);
  cplx f2 = fit.center + fdist * std::polar(1.0, phi);
  if (f2.real() < f1.real() || (f2.real() == f1.real() && f2.imag() < f1.imag())) std::swap(f1, f2);
  fit.focus1 = f1;
  fit.focus2 = f2;

  // Sampson residual, rescaled back to the original frame
  double ss = 0.0;
  for (const cplx& p : points) {
    const double x = (p.real() - mean.real()) / s, y = (p.imag() - mean.imag()) / s;
    const double val = ca * x * x + cb * x * y + cc * y * y + cd * x + ce * y + cf;
    const double gx = 2.0 * ca * x + cb * y + cd;
    const double gy = cb * x + 2.0 * cc * y + ce;
    const double gn = std::hypot(gx, gy);
    const double e = gn > 1e-300 ? val / gn : 0.0;
    ss += e * e;
  }
  fit.residual = s * std::sqrt(ss / double(points.size()));
  return fit;
}

std::vector<cplx> sample_boundary(const ComplexMatrix& a, const WeightVector& c, int m) {
  std::vector<cplx> pts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pts[std::size_t(i)] = support_point(a, c, kTwoPi * i / m);
  return pts;
}

std::vector<cplx> sample_region_boundary(const ConvexRegion& r, int m) {
  std::vector<cplx> pts;
  const auto& v = r.vertices();
  if (v.empty() || m <= 0) return pts;
  if (v.size() == 1) return std::vector<cplx>(static_cast<std::size_t>(m), v[0]);

  const auto edges = region_edges(r);
  double perimeter = 0.0;
  for (const auto& [p, q] : edges) perimeter += std::abs(q - p);
  if (perimeter == 0.0) return std::vector<cplx>(static_cast<std::size_t>(m), v[0]);

  pts.reserve(static_cast<std::size_t>(m));
  const double step = perimeter / m;
  double want = 0.0, walked = 0.0;
  for (const auto& [p, q] : edges) {
    const double len = std::abs(q - p);
    while (pts.size() < std::size_t(m) && want < walked + len) {
      pts.push_back(p + ((want - walked) / len) * (q - p));
      want += step;
    }
    walked += len;
  }
  while (pts.size() < std::size_t(m)) pts.push_back(v[0]);
  return pts;
}

double region_hausdorff(const ConvexRegion& r1, const ConvexRegion& r2) {
  if (r1.empty() && r2.empty()) return 0.0;
  if (r1.empty() || r2.empty()) return std::numeric_limits<double>::infinity();
  double h = 0.0;
  for (const cplx& v : r1.vertices()) h = std::max(h, r2.distance(v));
  for (const cplx& v : r2.vertices()) h = std::max(h, r1.distance(v));
  return h;
}

}  // namespace wnr
