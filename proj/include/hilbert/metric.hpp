#pragma once

// The Hilbert metric and derived machinery: distances, geodesics, distances
// to convex subsets, Hausdorff distances, simplex closed forms, face
// distances, and the segment/hull Hausdorff bound checks.

#include "hilbert/common.hpp"
#include "hilbert/domain.hpp"
#include "hilbert/projective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace hilbert {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline Vec require_interior_chart(const ConvexDomain& dom, const HomogeneousPoint& p) {
  auto x = dom.try_chart_point(p);
  if (!x || !(dom.interior_margin(*x) > 0))
    fail(errc::not_interior, "point is not in the open domain");
  return *x;
}

// Distance between chart points; +inf when either is not strictly interior.
// Evaluated through the chord parameter interval: for x at t=0 and y at t=1
// inside (t_lo, t_hi), the cross-ratio is (t_hi(1-t_lo))/((-t_lo)(t_hi-1)).
inline double distance_chart(const ConvexDomain& dom, const Vec& cx, const Vec& cy) {
  if (!(dom.interior_margin(cx) > 0) || !(dom.interior_margin(cy) > 0)) return kInf;
  Vec dir = cy - cx;
  if (dir.norm() <= 1e-15 * (1.0 + cx.norm())) return 0.0;
  auto iv = dom.clip_line(cx, dir);
  if (!iv || !(iv->first < 0.0 && iv->second > 1.0)) return kInf;
  double t0 = iv->first, t1 = iv->second;
  return 0.5 * std::log((t1 * (1.0 - t0)) / ((-t0) * (t1 - 1.0)));
}

// Minimize a quasiconvex function on [lo, hi] by golden-section search.
// +inf values (points outside the domain) are handled like any other value.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double* argmin) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 75; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double t = fc <= fd ? c : d;
  if (argmin) *argmin = t;
  return std::min(fc, fd);
}

}  // namespace detail

// d_Omega(x, y) = (1/2) log [a, x, y, b]. Interiority is strict (margin > 0)
// rather than tolerance-based: deep orbit points sit exponentially close to
// the boundary and have large but perfectly well-defined distances. Ellipsoid
// domains use the quadratic-form identity cosh d = |B(x,y)| / sqrt(B(x)B(y)),
// which stays accurate where chart differences would cancel catastrophically.
inline double hilbert_distance(const ConvexDomain& dom, const HomogeneousPoint& x,
                               const HomogeneousPoint& y) {
  Vec cx = detail::require_interior_chart(dom, x);
  Vec cy = detail::require_interior_chart(dom, y);
  if ((cy - cx).norm() <= 1e-15 * (1.0 + cx.norm())) return 0.0;
  if (dom.variant() == ConvexDomain::Variant::Ellipsoid) {
    const Mat& q = dom.form();
    const Vec& u = x.rep();
    const Vec& v = y.rep();
    double buu = u.dot(q * u), bvv = v.dot(q * v), buv = u.dot(q * v);
    double z = std::abs(buv) / std::sqrt(buu * bvv);
    return std::acosh(std::max(z, 1.0));
  }
  double d = detail::distance_chart(dom, cx, cy);
  if (!std::isfinite(d)) fail(errc::numeric_failure, "chord evaluation failed");
  return d;
}

// d(p, g^n p). Materializing g^n p in doubles quantizes the decaying
// eigen-component and caps accuracy near eps * e^(2 d); for ellipsoid domains
// the orbit and the form values are therefore accumulated in extended
// precision and the point is never rounded. Other variants fall back to the
// iterated map.
inline double orbit_distance(const ConvexDomain& dom, const HomogeneousPoint& p,
                             const ProjectiveMap& g, int n) {
  if (n < 0) fail(errc::invalid_argument, "orbit power must be nonnegative");
  if (g.dim() != p.dim()) fail(errc::invalid_argument, "dimension mismatch");
  if (n == 0) return 0.0;
  if (dom.variant() != ConvexDomain::Variant::Ellipsoid) {
    HomogeneousPoint y = p;
    for (int k = 0; k < n; ++k) y = g.apply(y);
    return hilbert_distance(dom, p, y);
  }
  (void)detail::require_interior_chart(dom, p);
  using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
  LVec x = p.rep().cast<long double>();
  LMat m = g.rep().cast<long double>();
  LMat q = dom.form().cast<long double>();
  LVec y = x;
  for (int k = 0; k < n; ++k) {
    y = LVec(m * y);
    y /= y.cwiseAbs().maxCoeff();
  }
  long double bxx = x.dot(q * x), byy = y.dot(q * y), bxy = x.dot(q * y);
  if (!(bxx > 0.0L) || !(byy > 0.0L)) fail(errc::not_interior, "orbit point left the domain");
  long double z = fabsl(bxy) / sqrtl(bxx * byy);
  return static_cast<double>(acoshl(z < 1.0L ? 1.0L : z));
}

// Point z on [x, y] with d(x, z) = s * d(x, y). In the chord parameter the
// cross-ratio coordinate lambda(t) = (t - t_lo)/(t_hi - t) is exponential in
// arclength, so z is the geometric interpolation of lambda_x and lambda_y.
inline HomogeneousPoint geodesic_point(const ConvexDomain& dom, const HomogeneousPoint& x,
                                       const HomogeneousPoint& y, double s) {
  if (!(s >= 0.0 && s <= 1.0)) fail(errc::invalid_argument, "parameter must lie in [0,1]");
  Vec cx = detail::require_interior_chart(dom, x);
  Vec cy = detail::require_interior_chart(dom, y);
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  Vec dir = cy - cx;
  if (dir.norm() <= 1e-15 * (1.0 + cx.norm())) return x;
  auto iv = dom.clip_line(cx, dir);
  if (!iv) fail(errc::numeric_failure, "chord evaluation failed");
  double t0 = iv->first, t1 = iv->second;
  double llx = std::log(-t0) - std::log(t1);
  double lly = std::log(1.0 - t0) - std::log(t1 - 1.0);
  double lam = std::exp((1.0 - s) * llx + s * lly);
  double t = (t0 + lam * t1) / (1.0 + lam);
  return dom.point_from_chart(Vec(cx + t * dir));
}

struct SubsetMinimizer {
  double value = 0.0;
  HomogeneousPoint point;
  VecX weights;  // hull coefficients of the minimizer
};

// Minimize d(p, .) over the hull of X: golden-section along the segment for
// two generators, multi-start coordinate descent over hull coefficients in
// general. Distance along a chart line is quasiconvex (Hilbert balls are
// convex), so each line search is exact.
inline SubsetMinimizer minimize_over_subset(const ConvexDomain& dom, const HomogeneousPoint& p,
                                            const ConvexSubset& x) {
  if (x.size() == 0) fail(errc::empty_subset, "subset has no generators");
  Vec pc = detail::require_interior_chart(dom, p);
  const MatX& g = x.generator_chart();
  int m = x.size();

  auto finish = [&](double val, const VecX& w) {
    SubsetMinimizer r;
    r.value = val;
    r.weights = w;
    r.point = dom.point_from_chart(Vec(g * w));
    return r;
  };

  if (m == 1) {
    VecX w = VecX::Ones(1);
    double v = detail::distance_chart(dom, pc, g.col(0));
    if (!std::isfinite(v)) fail(errc::not_interior, "subset is a boundary point");
    return finish(v, w);
  }
  if (m == 2) {
    Vec d = g.col(1) - g.col(0);
    double arg = 0.0;
    double v = detail::golden_min(
        [&](double t) { return detail::distance_chart(dom, pc, Vec(g.col(0) + t * d)); }, 0.0,
        1.0, &arg);
    VecX w(2);
    w << 1.0 - arg, arg;
    return finish(v, w);
  }

  Rng rng(kDefaultSeed ^ 0x6d696eull);
  std::vector<VecX> starts;
  starts.push_back(VecX::Constant(m, 1.0 / m));
  for (int i = 0; i < m; ++i) {
    VecX w = VecX::Constant(m, 1e-3 / (m - 1));
    w[i] = 1.0 - 1e-3;
    starts.push_back(w);
  }
  for (int i = 0; i < 8; ++i) starts.push_back(rng.dirichlet(m));

  double best = detail::kInf;
  VecX best_w = starts[0];
  for (const VecX& w0 : starts) {
    VecX w = w0;
    Vec z = g * w;
    double cur = detail::distance_chart(dom, pc, z);
    // Cyclic descent over weight exchanges w += t (e_i - e_j), a complete
    // basis of the weight simplex; each leg is a straight chart segment.
    for (int pass = 0; pass < 60; ++pass) {
      double before = cur;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          if (i == j) continue;
          Vec seg = g.col(i) - g.col(j);
          if (seg.norm() < 1e-14) continue;
          double lo = -w[i], hi = w[j];
          if (!(hi - lo > 1e-15)) continue;
          double arg = 0.0;
          double v = detail::golden_min(
              [&](double t) { return detail::distance_chart(dom, pc, Vec(z + t * seg)); }, lo, hi,
              &arg);
          if (v < cur) {
            cur = v;
            w[i] = std::max(w[i] + arg, 0.0);
            w[j] = std::max(w[j] - arg, 0.0);
            w /= w.sum();
            z = g * w;
          }
        }
      if (!(before - cur > 1e-13)) break;
    }
    if (cur < best) {
      best = cur;
      best_w = w;
    }
  }
  if (!std::isfinite(best)) fail(errc::not_interior, "subset does not meet the open domain");
  return finish(best, best_w);
}

inline double distance_to_subset(const ConvexDomain& dom, const HomogeneousPoint& p,
                                 const ConvexSubset& x) {
  return minimize_over_subset(dom, p, x).value;
}

// Hausdorff distance between finite point sets under d_Omega.
inline double hausdorff_distance(const ConvexDomain& dom, const std::vector<HomogeneousPoint>& a,
                                 const std::vector<HomogeneousPoint>& b) {
  if (a.empty() || b.empty()) fail(errc::empty_set, "hausdorff distance of an empty set");
  MatX d(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) d(i, j) = hilbert_distance(dom, a[i], b[j]);
  double fwd = d.rowwise().minCoeff().maxCoeff();
  double bwd = d.colwise().minCoeff().maxCoeff();
  return std::max(fwd, bwd);
}

// Hilbert distance on a simplex in vertex coordinates:
// (1/2) max over ordered pairs (i,j) of log((x_i y_j)/(x_j y_i)).
inline double simplex_distance_closed_form(const Simplex& s, const Vec& xc, const Vec& yc) {
  int n = s.dim() + 1;
  if (xc.size() != n || yc.size() != n)
    fail(errc::invalid_argument, "coordinate length must match vertex count");
  double mx = -detail::kInf, mn = detail::kInf;
  for (int i = 0; i < n; ++i) {
    if (!(xc[i] > 0.0) || !(yc[i] > 0.0))
      fail(errc::not_in_relative_interior, "vertex coordinates must be strictly positive");
    double r = std::log(xc[i]) - std::log(yc[i]);
    mx = std::max(mx, r);
    mn = std::min(mn, r);
  }
  return 0.5 * (mx - mn);
}

inline Vec simplex_vertex_coordinates(const Simplex& s, const HomogeneousPoint& p) {
  int n = s.dim() + 1;
  int d = s.vertices[0].dim();
  if (n > d) fail(errc::dependent_vertices, "simplex vertices must be projectively independent");
  Mat v(d, n);
  for (int i = 0; i < n; ++i) v.col(i) = s.vertices[i].rep();
  Vec c = v.colPivHouseholderQr().solve(p.rep());
  if ((v * c - p.rep()).norm() > 1e-9)
    fail(errc::not_in_relative_interior, "point is not in the simplex span");
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(c[i]) > std::abs(c[imax])) imax = i;
  if (c[imax] < 0) c = -c;
  for (int i = 0; i < n; ++i)
    if (!(c[i] > 1e-12 * std::abs(c[imax])))
      fail(errc::not_in_relative_interior, "point is not in the open simplex");
  return c;
}

inline double simplex_distance_closed_form(const Simplex& s, const HomogeneousPoint& x,
                                           const HomogeneousPoint& y) {
  return simplex_distance_closed_form(s, simplex_vertex_coordinates(s, x),
                                      simplex_vertex_coordinates(s, y));
}

// Distance inside the open face shared by x and y, measured in the face's own
// Hilbert geometry. Zero-dimensional faces are single points.
inline double face_distance(const ConvexDomain& dom, const HomogeneousPoint& x,
                            const HomogeneousPoint& y) {
  Face fx = dom.face_of(x);
  Face fy = dom.face_of(y);
  if (!fx.signature.equal(fy.signature))
    fail(errc::face_mismatch, "points lie in different open faces");
  if (fx.signature.kind == FaceSignature::Kind::WholeDomain) return hilbert_distance(dom, x, y);
  if (fx.dim <= 0) return 0.0;
  ConvexDomain fd = dom.face_domain(fx);
  return hilbert_distance(fd, x, y);
}

struct HausdorffBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

namespace detail {

// Directed sampled Hausdorff from segment (a1,a2) to the hull of `other`:
// sample one side at chart-uniform parameters, minimize exactly to the other.
inline double directed_segment_gap(const ConvexDomain& dom, const HomogeneousPoint& a1,
                                   const HomogeneousPoint& a2, const ConvexSubset& other,
                                   int samples) {
  Vec c1 = dom.chart_point(a1), c2 = dom.chart_point(a2);
  double worst = 0.0;
  for (int i = 1; i < samples; ++i) {
    double t = static_cast<double>(i) / samples;
    Vec c = c1 + t * (c2 - c1);
    if (!(dom.interior_margin(c) > 0)) continue;
    HomogeneousPoint p = dom.point_from_chart(c);
    worst = std::max(worst, distance_to_subset(dom, p, other));
  }
  return worst;
}

}  // namespace detail

// Hausdorff bound for segments: the distance between the open segments
// (p1,p2) and (q1,q2) is controlled by the face distances at the endpoint
// pairs. lhs is a sampled Hausdorff distance, rhs the max face distance.
inline HausdorffBoundReport check_segment_hausdorff_bound(
    std::shared_ptr<const ConvexDomain> dom_ptr, const HomogeneousPoint& p1,
    const HomogeneousPoint& p2, const HomogeneousPoint& q1, const HomogeneousPoint& q2,
    int samples = 200) {
  const ConvexDomain& dom = *dom_ptr;
  if (!dom.same_face(p1, q1) || !dom.same_face(p2, q2))
    fail(errc::face_mismatch, "endpoint pairs must share open faces");
  for (auto [u, v] : {std::pair{&p1, &p2}, std::pair{&q1, &q2}}) {
    Vec cu = dom.chart_point(*u), cv = dom.chart_point(*v);
    for (int i = 1; i < 16; ++i) {
      Vec c = cu + (static_cast<double>(i) / 16) * (cv - cu);
      if (!(dom.interior_margin(c) > 0))
        fail(errc::segment_outside, "open segment must lie inside the domain");
    }
  }
  HausdorffBoundReport r;
  r.rhs = std::max(face_distance(dom, p1, q1), face_distance(dom, p2, q2));
  ConvexSubset sp(dom_ptr, {p1, p2});
  ConvexSubset sq(dom_ptr, {q1, q2});
  r.lhs = std::max(detail::directed_segment_gap(dom, p1, p2, sq, samples),
                   detail::directed_segment_gap(dom, q1, q2, sp, samples));
  r.ok = r.lhs <= r.rhs + tol::samp;
  return r;
}

// Hausdorff bound for hulls: ConvHull(p_j) vs ConvHull(q_j) intersected with
// the open face of z, with matching endpoint faces pairwise. z selects the
// face; when z is a boundary point the comparison recurses into the face's
// own geometry.
inline HausdorffBoundReport check_hull_hausdorff_bound(
    std::shared_ptr<const ConvexDomain> dom_ptr, const std::vector<HomogeneousPoint>& qs,
    const std::vector<HomogeneousPoint>& ps, const HomogeneousPoint& z, int samples = 2000) {
  const ConvexDomain& dom = *dom_ptr;
  if (qs.size() != ps.size() || qs.empty())
    fail(errc::invalid_argument, "point lists must match and be nonempty");
  for (std::size_t j = 0; j < qs.size(); ++j)
    if (!dom.same_face(ps[j], qs[j]))
      fail(errc::face_mismatch, "paired points must share open faces");

  HausdorffBoundReport r;
  for (std::size_t j = 0; j < qs.size(); ++j)
    r.rhs = std::max(r.rhs, face_distance(dom, ps[j], qs[j]));

  Face fz = dom.face_of(z);
  std::shared_ptr<const ConvexDomain> work = dom_ptr;
  if (fz.signature.kind != FaceSignature::Kind::WholeDomain) {
    if (fz.dim <= 0) {  // hulls meet a point face: nothing to measure
      r.ok = true;
      return r;
    }
    work = std::make_shared<const ConvexDomain>(dom.face_domain(fz));
  }
  ConvexSubset hq(work, qs);
  ConvexSubset hp(work, ps);
  {
    Vec zc = work->chart_point(z);
    if (hq.hull_chart_distance(zc) > 1e-6)
      fail(errc::invalid_argument, "z must lie in the hull of the q-list");
  }

  Rng rng(kDefaultSeed ^ 0x68756cull);
  auto directed = [&](const ConvexSubset& from, const ConvexSubset& to) {
    double worst = 0.0;
    int kept = 0;
    const MatX& g = from.generator_chart();
    int m = from.size();
    for (int it = 0; it < samples && kept < samples; ++it) {
      VecX w = rng.dirichlet(m);
      Vec c = g * w;
      if (!(work->interior_margin(c) > 0)) continue;
      ++kept;
      HomogeneousPoint p = work->point_from_chart(c);
      worst = std::max(worst, distance_to_subset(*work, p, to));
    }
    return worst;
  };
  r.lhs = std::max(directed(hq, hp), directed(hp, hq));
  r.ok = r.lhs <= r.rhs + tol::samp;
  return r;
}

struct AsymptoticFacesReport {
  double liminf_dist = 0.0;
  bool face_equal = false;
  double face_dist = std::numeric_limits<double>::quiet_NaN();
  HomogeneousPoint limit_p;
  HomogeneousPoint limit_q;
  bool ok = false;
};

namespace detail {

// Boundary limit of a sequence converging to the boundary: the exit point of
// the ray through the last two (distinct) chart positions. The last three
// estimates must agree; otherwise the sequence is not converging.
inline HomogeneousPoint sequence_boundary_limit(const ConvexDomain& dom,
                                                const std::vector<HomogeneousPoint>& seq) {
  if (seq.size() < 3) fail(errc::not_converging, "need at least three points");
  std::vector<Vec> est;
  for (std::size_t k = seq.size() - 3; k + 1 < seq.size(); ++k) {
    Vec a = dom.chart_point(seq[k]);
    Vec b = dom.chart_point(seq[k + 1]);
    if ((b - a).norm() < 1e-13)
      fail(errc::not_converging, "sequence is stationary away from the boundary");
    est.push_back(dom.ray_boundary_exit(a, Vec(b - a)).rep());
  }
  if (proj_dist(est.front(), est.back()) > 1e-3)
    fail(errc::not_converging, "boundary limit estimates disagree");
  return HomogeneousPoint(est.back());
}

}  // namespace detail

// Asymptotic sequences land in the same open face, and the face distance of
// the limits is bounded by the liminf of the pairwise distances.
inline AsymptoticFacesReport check_asymptotic_faces(const ConvexDomain& dom,
                                                    const std::vector<HomogeneousPoint>& ps,
                                                    const std::vector<HomogeneousPoint>& qs) {
  std::size_t n = std::min(ps.size(), qs.size());
  if (n < 3) fail(errc::not_converging, "need at least three points");
  AsymptoticFacesReport r;
  r.limit_p = detail::sequence_boundary_limit(dom, ps);
  r.limit_q = detail::sequence_boundary_limit(dom, qs);
  double liminf = detail::kInf;
  for (std::size_t k = n / 2; k < n; ++k)
    liminf = std::min(liminf, hilbert_distance(dom, ps[k], qs[k]));
  r.liminf_dist = liminf;
  r.face_equal = dom.same_face(r.limit_p, r.limit_q);
  if (r.face_equal) {
    r.face_dist = face_distance(dom, r.limit_p, r.limit_q);
    r.ok = r.face_dist <= r.liminf_dist + tol::samp;
  }
  return r;
}

}  // namespace hilbert
