#pragma once

// Properly convex domains and their face structure.
//
// A domain is an ellipsoid (signature (1,d-1) quadratic form), a polytope
// (vertex list with derived facets), or a simplex. Polytopes and simplices
// may span a proper subspace of P(R^d); geometry is computed intrinsically in
// an orthonormal basis of the linear span, inside an affine chart whose
// covector is the centroid direction of the defining data. The closure of a
// valid domain always lies strictly inside its chart, so segment clipping and
// membership reduce to bounded convex geometry in chart coordinates.

#include "hilbert/common.hpp"
#include "hilbert/projective.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace hilbert {

enum class Region { Interior, Boundary, Outside };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::Interior: return "Interior";
    case Region::Boundary: return "Boundary";
    case Region::Outside: return "Outside";
  }
  return "?";
}

// Open-face identity. Polytope faces are named by their active facet set,
// ellipsoid boundary faces by the boundary point itself (they are singletons),
// and the whole domain by a reserved tag.
struct FaceSignature {
  enum class Kind { WholeDomain, FacetSet, BoundaryPoint };
  Kind kind = Kind::WholeDomain;
  std::vector<int> facets;  // sorted, Kind::FacetSet
  Vec point;                // canonical rep, Kind::BoundaryPoint

  bool equal(const FaceSignature& o, double point_tol = tol::dedup) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::WholeDomain: return true;
      case Kind::FacetSet: return facets == o.facets;
      case Kind::BoundaryPoint:
        return point.size() == o.point.size() && proj_dist(point, o.point) <= point_tol;
    }
    return false;
  }
};

struct Face {
  FaceSignature signature;
  Mat span;  // orthonormal basis of the face's linear span (ambient coords)
  int dim = 0;
  std::vector<int> vertex_ids;  // polytope/simplex faces
};

struct Facet {
  Vec normal;          // unit normal in chart coordinates, interior side positive
  double offset = 0.0;  // margin(x) = normal.x - offset
  std::vector<int> vertex_ids;
};

class ConvexDomain {
 public:
  enum class Variant { Ellipsoid, Polytope, Simplex };

  static ConvexDomain ellipsoid(const Mat& form);
  static ConvexDomain polytope(std::vector<HomogeneousPoint> verts);
  static ConvexDomain simplex(std::vector<HomogeneousPoint> verts);

  // Common fixtures.
  static ConvexDomain unit_ball(int d = 3) {
    Mat q = Mat::Identity(d, d) * -1.0;
    q(0, 0) = 1.0;
    return ellipsoid(q);
  }
  static ConvexDomain square() {
    std::vector<HomogeneousPoint> vs;
    for (double sx : {1.0, -1.0})
      for (double sy : {1.0, -1.0}) {
        Vec v(3);
        v << 1.0, sx, sy;
        vs.emplace_back(v);
      }
    return polytope(std::move(vs));
  }
  static ConvexDomain standard_simplex(int k = 2) {
    std::vector<HomogeneousPoint> vs;
    for (int i = 0; i <= k; ++i) {
      Vec v = Vec::Zero(k + 1);
      v[i] = 1.0;
      vs.emplace_back(v);
    }
    return simplex(std::move(vs));
  }

  Variant variant() const { return variant_; }
  int ambient_dim() const { return d_; }
  int span_dim() const { return m_; }
  int projective_dim() const { return m_ - 1; }
  int chart_dim() const { return m_ - 1; }
  const Mat& span() const { return span_; }
  const AffineChart& chart() const { return chart_; }
  const Mat& form() const { return form_; }
  const std::vector<HomogeneousPoint>& vertices() const { return verts_; }
  const std::vector<Facet>& facets() const { return facets_; }

  // Interior reference point (chart centroid of the defining data).
  HomogeneousPoint base_point() const { return point_from_chart(base_chart_); }
  const Vec& base_chart() const { return base_chart_; }

  // Chart coordinates of a point; requires membership in the linear span.
  Vec chart_point(const HomogeneousPoint& p) const {
    Vec r = to_span(p);
    return chart_.to_chart(HomogeneousPoint(r));
  }

  // Chart coordinates, or nullopt when the point leaves the linear span or
  // sits at chart infinity. Unlike classify, no boundary tolerance is applied,
  // so callers can test strict interiority of points arbitrarily close to
  // the boundary.
  std::optional<Vec> try_chart_point(const HomogeneousPoint& p) const {
    Vec v = p.rep();
    if (m_ < d_) {
      Vec r = span_.transpose() * v;
      if ((v - span_ * r).norm() > tol::geo) return std::nullopt;
      v = r;
    }
    double s = chart_.covector().dot(v);
    if (std::abs(s) < 1e-13) return std::nullopt;
    return Vec(chart_.basis().transpose() * Vec(v / s - chart_.origin()));
  }

  HomogeneousPoint point_from_chart(const Vec& x) const {
    Vec r = chart_.from_chart(x).rep();
    return HomogeneousPoint(Vec(span_ * r));
  }

  Region classify(const HomogeneousPoint& p, double geo_tol = tol::geo) const {
    Vec v = p.rep();
    if (m_ < d_) {
      Vec proj = span_ * (span_.transpose() * v);
      if ((v - proj).norm() > geo_tol) return Region::Outside;
      v = span_.transpose() * p.rep();
    }
    double s = chart_.covector().dot(v);
    if (std::abs(s) < 1e-13) return Region::Outside;
    Vec x = chart_.basis().transpose() * Vec(v / s - chart_.origin());
    double margin = interior_margin(x);
    if (margin > geo_tol) return Region::Interior;
    if (margin >= -geo_tol) return Region::Boundary;
    return Region::Outside;
  }

  // Signed interior margin in chart units: positive inside, ~0 on the
  // boundary. For polytopes this is the least facet margin; for ellipsoids
  // the quadratic value is scaled by its gradient to approximate Euclidean
  // boundary distance.
  double interior_margin(const Vec& x) const {
    if (variant_ == Variant::Ellipsoid) {
      double f = quad_value(x);
      Vec grad = 2.0 * (quad_h_ * x + quad_g_);
      return f / std::max(grad.norm(), 1e-9);
    }
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& fc : facets_) mn = std::min(mn, fc.normal.dot(x) - fc.offset);
    return mn;
  }

  // Clip the chart line x0 + t*dir against the domain; returns the open
  // parameter interval of the interior, or nullopt when the line misses it.
  std::optional<std::pair<double, double>> clip_line(const Vec& x0, const Vec& dir) const {
    if (variant_ == Variant::Ellipsoid) {
      double a = dir.dot(quad_h_ * dir);
      double b = 2.0 * (dir.dot(quad_h_ * x0) + quad_g_.dot(dir));
      double c = quad_value(x0);
      // The chart form is negative definite on chart directions, so a < 0 and
      // the interior interval lies between the roots.
      double disc = b * b - 4 * a * c;
      if (!(disc > 0)) return std::nullopt;
      double sq = std::sqrt(disc);
      double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      double t1 = q / a, t2 = c / q;
      if (t1 > t2) std::swap(t1, t2);
      return std::make_pair(t1, t2);
    }
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& fc : facets_) {
      double m0 = fc.normal.dot(x0) - fc.offset;
      double slope = fc.normal.dot(dir);
      if (std::abs(slope) < 1e-15) {
        if (m0 <= 0) return std::nullopt;
        continue;
      }
      double t = -m0 / slope;
      if (slope > 0)
        lo = std::max(lo, t);
      else
        hi = std::min(hi, t);
    }
    if (!(lo < hi)) return std::nullopt;
    return std::make_pair(lo, hi);
  }

  // Boundary endpoints of the chord through p and q, ordered (a, p, q, b).
  std::pair<HomogeneousPoint, HomogeneousPoint> line_boundary_intersection(
      const HomogeneousPoint& p, const HomogeneousPoint& q) const {
    if (classify(p) == Region::Outside || classify(q) == Region::Outside)
      fail(errc::outside_point, "chord endpoints must lie in the closure");
    Vec xp = chart_point(p), xq = chart_point(q);
    Vec dir = xq - xp;
    if (dir.norm() <= 1e-12 * (1.0 + xp.norm()))
      fail(errc::coincident_points, "chord through coincident points");
    auto iv = clip_line(xp, dir);
    if (!iv) fail(errc::segment_outside, "line misses the domain");
    auto [t_lo, t_hi] = *iv;
    if (!(t_hi - t_lo > 1e-12)) fail(errc::segment_outside, "degenerate chord");
    Vec mid = xp + 0.5 * (t_lo + t_hi) * dir;
    if (!(interior_margin(mid) > 0)) fail(errc::segment_outside, "chord midpoint not interior");
    return {point_from_chart(Vec(xp + t_lo * dir)), point_from_chart(Vec(xp + t_hi * dir))};
  }

  // Boundary point hit by the ray from x0 (interior, chart coords) along dir.
  HomogeneousPoint ray_boundary_exit(const Vec& x0, const Vec& dir) const {
    auto iv = clip_line(x0, dir);
    if (!iv || !(iv->second > 0)) fail(errc::segment_outside, "ray misses the boundary");
    return point_from_chart(Vec(x0 + iv->second * dir));
  }

  Face face_of(const HomogeneousPoint& p, double geo_tol = tol::geo) const {
    Region r = classify(p, geo_tol);
    if (r == Region::Outside) fail(errc::outside_point, "face of an exterior point");
    Face f;
    if (r == Region::Interior) {
      f.signature.kind = FaceSignature::Kind::WholeDomain;
      f.span = span_;
      f.dim = projective_dim();
      return f;
    }
    if (variant_ == Variant::Ellipsoid) {
      f.signature.kind = FaceSignature::Kind::BoundaryPoint;
      f.signature.point = p.rep();
      f.span = p.rep();
      f.dim = 0;
      return f;
    }
    Vec x = chart_point(p);
    f.signature.kind = FaceSignature::Kind::FacetSet;
    for (int i = 0; i < static_cast<int>(facets_.size()); ++i)
      if (facets_[i].normal.dot(x) - facets_[i].offset <= geo_tol) f.signature.facets.push_back(i);
    // Vertices lying on every active facet span the closed face.
    for (int v = 0; v < static_cast<int>(verts_.size()); ++v) {
      bool on_all = true;
      for (int fi : f.signature.facets) {
        const auto& ids = facets_[fi].vertex_ids;
        if (!std::binary_search(ids.begin(), ids.end(), v)) {
          on_all = false;
          break;
        }
      }
      if (on_all) f.vertex_ids.push_back(v);
    }
    if (f.vertex_ids.empty()) fail(errc::numeric_failure, "boundary point with empty face");
    MatX stack(d_, static_cast<int>(f.vertex_ids.size()));
    for (int i = 0; i < static_cast<int>(f.vertex_ids.size()); ++i)
      stack.col(i) = verts_[f.vertex_ids[i]].rep();
    Eigen::JacobiSVD<MatX> svd(stack, Eigen::ComputeFullU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > tol::rank * svd.singularValues()[0]) ++rank;
    f.span = svd.matrixU().leftCols(rank);
    f.dim = rank - 1;
    return f;
  }

  bool same_face(const HomogeneousPoint& x, const HomogeneousPoint& y,
                 double point_tol = tol::dedup) const {
    return face_of(x).signature.equal(face_of(y).signature, point_tol);
  }

  // The open face as a Hilbert geometry of its own. Zero-dimensional faces
  // carry no geometry; callers handle them directly.
  ConvexDomain face_domain(const Face& f) const {
    if (f.signature.kind == FaceSignature::Kind::WholeDomain) return *this;
    if (f.dim <= 0) fail(errc::invalid_argument, "zero-dimensional face has no domain");
    std::vector<HomogeneousPoint> vs;
    for (int id : f.vertex_ids) vs.push_back(verts_[id]);
    if (static_cast<int>(vs.size()) == f.dim + 1) return simplex(std::move(vs));
    return polytope(std::move(vs));
  }

  // Deterministic interior samples (margin keeps them away from the boundary).
  std::vector<HomogeneousPoint> sample_interior(int n, Rng& rng, double margin = 1e-3) const {
    std::vector<HomogeneousPoint> out;
    out.reserve(n);
    int k = chart_dim();
    while (static_cast<int>(out.size()) < n) {
      if (variant_ == Variant::Ellipsoid) {
        Vec dir = rng.unit_vector(k);
        auto iv = clip_line(base_chart_, dir);
        if (!iv) continue;
        double radial = std::pow(rng.uniform(), 1.0 / k) * (1.0 - margin);
        out.push_back(point_from_chart(Vec(base_chart_ + dir * (radial * iv->second))));
      } else {
        VecX w = rng.dirichlet(static_cast<int>(verts_.size()));
        Vec x = Vec::Zero(k);
        for (int i = 0; i < static_cast<int>(verts_.size()); ++i) x += w[i] * vert_chart_.col(i);
        Vec xs = base_chart_ + (1.0 - margin) * (x - base_chart_);
        if (interior_margin(xs) <= 0) continue;
        out.push_back(point_from_chart(xs));
      }
    }
    return out;
  }

  std::vector<HomogeneousPoint> sample_boundary(int n, Rng& rng) const {
    std::vector<HomogeneousPoint> out;
    out.reserve(n);
    while (static_cast<int>(out.size()) < n) {
      Vec dir = rng.unit_vector(chart_dim());
      auto iv = clip_line(base_chart_, dir);
      if (!iv) continue;
      out.push_back(point_from_chart(Vec(base_chart_ + iv->second * dir)));
    }
    return out;
  }

 private:
  ConvexDomain() = default;

  Vec to_span(const HomogeneousPoint& p) const {
    if (m_ == d_) return p.rep();
    return span_.transpose() * p.rep();
  }

  double quad_value(const Vec& x) const {
    return quad_c_ + 2.0 * quad_g_.dot(x) + x.dot(quad_h_ * x);
  }

  void build_chart_quadratic() {
    // f(x) = c + 2 g.x + x^T H x for chart point origin + basis*x.
    const Mat& b = chart_.basis();
    const Vec& o = chart_.origin();
    quad_c_ = o.dot(form_i_ * o);
    quad_g_ = b.transpose() * (form_i_ * o);
    quad_h_ = b.transpose() * form_i_ * b;
  }

  Variant variant_ = Variant::Ellipsoid;
  int d_ = 0;  // ambient dimension
  int m_ = 0;  // linear span dimension
  Mat span_;   // d x m, orthonormal columns (identity when m == d)
  AffineChart chart_ = AffineChart(Vec::Ones(2));  // intrinsic chart, rebuilt by factories

  // ellipsoid data (ambient form and its intrinsic restriction)
  Mat form_;
  Mat form_i_;
  double quad_c_ = 0;
  Vec quad_g_;
  Mat quad_h_;

  // polytope / simplex data
  std::vector<HomogeneousPoint> verts_;
  MatX vert_chart_;  // chart coords, one column per vertex
  std::vector<Facet> facets_;

  Vec base_chart_;
};

namespace detail {

// Orthonormal basis of the column span (singular vectors above the rank cut).
// At full rank the identity is returned so that span coordinates coincide
// with ambient coordinates.
inline Mat column_span(const MatX& cols, int* rank_out = nullptr) {
  Eigen::JacobiSVD<MatX> svd(cols, Eigen::ComputeFullU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol::rank * svd.singularValues()[0]) ++rank;
  if (rank_out) *rank_out = rank;
  if (rank == cols.rows()) return Mat::Identity(rank, rank);
  return svd.matrixU().leftCols(rank);
}

// Align representative signs so the points lie in one half-space; needed to
// take convex combinations and a common chart.
inline std::vector<Vec> sign_aligned(const std::vector<HomogeneousPoint>& pts, const Mat& span) {
  std::vector<Vec> reps;
  reps.reserve(pts.size());
  Vec mean = Vec::Zero(span.cols());
  for (const auto& p : pts) {
    Vec r = span.transpose() * p.rep();
    if (!reps.empty() && r.dot(mean) < 0) r = -r;
    mean += r;
    reps.push_back(r);
  }
  return reps;
}

}  // namespace detail

inline ConvexDomain ConvexDomain::ellipsoid(const Mat& form) {
  if (form.rows() != form.cols()) fail(errc::invalid_argument, "form must be square");
  int d = static_cast<int>(form.rows());
  if (d < 2 || d > kMaxDim) fail(errc::invalid_argument, "ambient dimension must be in [2,8]");
  Mat q = 0.5 * (form + form.transpose());
  q /= q.norm();
  Eigen::SelfAdjointEigenSolver<Mat> eig(q);
  int pos = 0, neg = 0;
  for (int i = 0; i < d; ++i) {
    if (eig.eigenvalues()[i] > tol::rank) ++pos;
    if (eig.eigenvalues()[i] < -tol::rank) ++neg;
  }
  if (pos == d - 1 && neg == 1) {  // accept either sign convention
    q = -q;
    eig.compute(q);
    std::swap(pos, neg);
  }
  if (pos != 1 || neg != d - 1)
    fail(errc::bad_signature, "ellipsoid form must have signature (1, d-1)");

  ConvexDomain dom;
  dom.variant_ = Variant::Ellipsoid;
  dom.d_ = dom.m_ = d;
  dom.span_ = Mat::Identity(d, d);
  dom.form_ = q;
  dom.form_i_ = q;
  // Chart covector: the positive eigendirection; the closed positive cone
  // meets {b.x = 0} only at the origin, so the closure is bounded in chart.
  Vec axis = eig.eigenvectors().col(d - 1);  // eigenvalues ascend
  dom.chart_ = AffineChart(canonical_vector(axis));
  dom.build_chart_quadratic();
  dom.base_chart_ = Vec::Zero(d - 1);
  if (!(dom.quad_value(dom.base_chart_) > 0))
    fail(errc::numeric_failure, "chart origin not interior");
  return dom;
}

namespace detail {

inline void enumerate_facets(const MatX& xs, std::vector<Facet>& out) {
  int k = static_cast<int>(xs.rows());
  int n = static_cast<int>(xs.cols());
  double scale = 0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, xs.col(i).norm());
  double face_tol = 1e-9 * std::max(scale, 1.0);
  Vec centroid = xs.rowwise().mean();

  if (k == 1) {
    int imin = 0, imax = 0;
    for (int i = 1; i < n; ++i) {
      if (xs(0, i) < xs(0, imin)) imin = i;
      if (xs(0, i) > xs(0, imax)) imax = i;
    }
    for (int side = 0; side < 2; ++side) {
      Facet fc;
      fc.normal = Vec::Ones(1);
      fc.normal[0] = side == 0 ? 1.0 : -1.0;
      fc.offset = side == 0 ? xs(0, imin) : -xs(0, imax);
      for (int i = 0; i < n; ++i)
        if (std::abs(fc.normal[0] * xs(0, i) - fc.offset) <= face_tol) fc.vertex_ids.push_back(i);
      out.push_back(std::move(fc));
    }
    return;
  }

  if ((k >= 3 && n > 40) || n > 256)
    fail(errc::validation_error, "polytope facet enumeration limit exceeded");

  std::vector<int> idx(k);
  std::vector<std::vector<int>> seen_active;
  // all k-subsets via odometer
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mat diffs(k, k - 1);
    for (int i = 1; i < k; ++i) diffs.col(i - 1) = xs.col(idx[i]) - xs.col(idx[0]);
    Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullU);
    bool independent = k == 1 || svd.singularValues().minCoeff() > 1e-10 * std::max(scale, 1.0);
    if (independent) {
      Vec nrm = svd.matrixU().col(k - 1);
      double off = nrm.dot(xs.col(idx[0]));
      double cm = nrm.dot(centroid) - off;
      if (cm < 0) {
        nrm = -nrm;
        off = -off;
        cm = -cm;
      }
      bool hull_facet = cm > face_tol;
      std::vector<int> active;
      if (hull_facet) {
        for (int i = 0; i < n && hull_facet; ++i) {
          double m = nrm.dot(xs.col(i)) - off;
          if (m < -face_tol) hull_facet = false;
          if (std::abs(m) <= face_tol) active.push_back(i);
        }
      }
      if (hull_facet && std::find(seen_active.begin(), seen_active.end(), active) == seen_active.end()) {
        seen_active.push_back(active);
        Facet fc;
        fc.normal = nrm;
        fc.offset = off;
        fc.vertex_ids = active;
        out.push_back(std::move(fc));
      }
    }
    // advance odometer
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace detail

inline ConvexDomain ConvexDomain::polytope(std::vector<HomogeneousPoint> verts) {
  if (verts.size() < 2) fail(errc::invalid_argument, "polytope needs at least two vertices");
  int d = verts[0].dim();
  for (const auto& v : verts)
    if (v.dim() != d) fail(errc::invalid_argument, "vertex dimension mismatch");
  MatX stack(d, static_cast<int>(verts.size()));
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) stack.col(i) = verts[i].rep();
  int m = 0;
  Mat span = detail::column_span(stack, &m);
  if (m < 2) fail(errc::dependent_vertices, "polytope must span a projective line at least");

  ConvexDomain dom;
  dom.variant_ = Variant::Polytope;
  dom.d_ = d;
  dom.m_ = m;
  dom.span_ = span;
  dom.verts_ = std::move(verts);

  auto reps = detail::sign_aligned(dom.verts_, span);
  Vec b = Vec::Zero(m);
  for (auto& r : reps) b += r / r.norm();
  if (b.norm() < 1e-9) fail(errc::validation_error, "vertices do not share an affine chart");
  dom.chart_ = AffineChart(b);
  for (const auto& r : reps)
    if (std::abs(dom.chart_.covector().dot(r)) < tol::chart_margin * r.norm())
      fail(errc::validation_error, "vertex too close to chart infinity");

  int k = m - 1;
  dom.vert_chart_ = MatX(k, static_cast<int>(reps.size()));
  for (int i = 0; i < static_cast<int>(reps.size()); ++i)
    dom.vert_chart_.col(i) = dom.chart_.to_chart(HomogeneousPoint(reps[i]));
  detail::enumerate_facets(dom.vert_chart_, dom.facets_);
  if (static_cast<int>(dom.facets_.size()) < k + 1)
    fail(errc::validation_error, "vertex set has no interior");
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
    int on = 0;
    for (const auto& fc : dom.facets_)
      if (std::binary_search(fc.vertex_ids.begin(), fc.vertex_ids.end(), i)) ++on;
    if (on < k) fail(errc::validation_error, "non-extreme point in vertex list");
  }
  dom.base_chart_ = dom.vert_chart_.rowwise().mean();
  if (!(dom.interior_margin(dom.base_chart_) > 0))
    fail(errc::validation_error, "vertex centroid not interior");
  return dom;
}

inline ConvexDomain ConvexDomain::simplex(std::vector<HomogeneousPoint> verts) {
  int n = static_cast<int>(verts.size());
  if (n < 2) fail(errc::invalid_argument, "simplex needs at least two vertices");
  int d = verts[0].dim();
  if (n > d) fail(errc::dependent_vertices, "simplex vertices must be projectively independent");
  for (const auto& v : verts)
    if (v.dim() != d) fail(errc::invalid_argument, "vertex dimension mismatch");
  Mat stack(d, n);
  for (int i = 0; i < n; ++i) stack.col(i) = verts[i].rep();
  int m = 0;
  Mat span = detail::column_span(stack, &m);
  if (m != n) fail(errc::dependent_vertices, "simplex vertices must be projectively independent");

  ConvexDomain dom;
  dom.variant_ = Variant::Simplex;
  dom.d_ = d;
  dom.m_ = m;
  dom.span_ = span;
  dom.verts_ = std::move(verts);

  auto reps = detail::sign_aligned(dom.verts_, span);
  Vec b = Vec::Zero(m);
  for (auto& r : reps) b += r / r.norm();
  if (b.norm() < 1e-9) fail(errc::validation_error, "vertices do not share an affine chart");
  dom.chart_ = AffineChart(b);
  for (const auto& r : reps)
    if (std::abs(dom.chart_.covector().dot(r)) < tol::chart_margin * r.norm())
      fail(errc::validation_error, "vertex too close to chart infinity");

  int k = m - 1;
  dom.vert_chart_ = Mat(k, n);
  for (int i = 0; i < n; ++i)
    dom.vert_chart_.col(i) = dom.chart_.to_chart(HomogeneousPoint(reps[i]));

  // Facet i is the coordinate hyperplane of the i-th barycentric coordinate.
  Mat vmat(m, m);
  for (int i = 0; i < m; ++i) vmat.col(i) = reps[i];
  Mat vinv = vmat.inverse();
  if (!vinv.allFinite()) fail(errc::dependent_vertices, "simplex vertex matrix is singular");
  const Mat& cb = dom.chart_.basis();
  const Vec& co = dom.chart_.origin();
  for (int i = 0; i < m; ++i) {
    Vec functional = vinv.row(i).transpose();
    Vec nrm = cb.transpose() * functional;
    double off = -functional.dot(co);
    double nn = nrm.norm();
    if (nn < 1e-14) fail(errc::numeric_failure, "degenerate simplex facet");
    Facet fc;
    fc.normal = nrm / nn;
    fc.offset = off / nn;
    for (int j = 0; j < m; ++j)
      if (j != i) fc.vertex_ids.push_back(j);
    dom.facets_.push_back(std::move(fc));
  }
  dom.base_chart_ = dom.vert_chart_.rowwise().mean();
  if (!(dom.interior_margin(dom.base_chart_) > 0))
    fail(errc::numeric_failure, "simplex centroid not interior");
  return dom;
}

// Closed convex hull of finitely many closure points, intersected with the
// domain. Subsets whose hull meets the boundary only (e.g. an axis running
// inside a closed boundary face) are representable but carry no interior;
// metric operations on them raise EmptySubset.
class ConvexSubset {
 public:
  ConvexSubset(std::shared_ptr<const ConvexDomain> domain, std::vector<HomogeneousPoint> gens,
               std::optional<HomogeneousPoint> base = std::nullopt)
      : domain_(std::move(domain)), gens_(std::move(gens)) {
    if (!domain_) fail(errc::invalid_argument, "subset needs an ambient domain");
    if (gens_.empty()) fail(errc::empty_subset, "subset needs generators");
    int k = domain_->chart_dim();
    gen_chart_ = MatX(k, static_cast<int>(gens_.size()));
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
      if (domain_->classify(gens_[i]) == Region::Outside)
        fail(errc::outside_point, "subset generator outside the closure");
      gen_chart_.col(i) = domain_->chart_point(gens_[i]);
    }
    if (base) {
      base_chart_ = domain_->chart_point(*base);
    } else {
      base_chart_ = gen_chart_.rowwise().mean();
    }
    has_interior_ = domain_->classify(domain_->point_from_chart(base_chart_)) == Region::Interior;
  }

  const ConvexDomain& domain() const { return *domain_; }
  std::shared_ptr<const ConvexDomain> domain_ptr() const { return domain_; }
  const std::vector<HomogeneousPoint>& generators() const { return gens_; }
  const MatX& generator_chart() const { return gen_chart_; }
  int size() const { return static_cast<int>(gens_.size()); }
  bool has_interior() const { return has_interior_; }
  const Vec& base_chart() const { return base_chart_; }
  HomogeneousPoint base_point() const { return domain_->point_from_chart(base_chart_); }

  ConvexSubset translate(const ProjectiveMap& g) const {
    std::vector<HomogeneousPoint> mapped;
    mapped.reserve(gens_.size());
    for (const auto& p : gens_) mapped.push_back(g.apply(p));
    return ConvexSubset(domain_, std::move(mapped), g.apply(base_point()));
  }

  HomogeneousPoint combine(const VecX& weights) const {
    Vec x = gen_chart_ * weights;
    return domain_->point_from_chart(x);
  }

  // Exact chart-Euclidean distance from x to the hull for few generators
  // (exhaustive face enumeration of the coefficient simplex); projected
  // nearest-generator/segment approximation above the cutoff.
  double hull_chart_distance(const Vec& x) const {
    int n = size();
    if (n <= 12) {
      // The minimizer over the coefficient simplex lies on some face; solving
      // the affine least-squares problem on every support and keeping the
      // feasible ones yields the exact optimum.
      double best = std::numeric_limits<double>::infinity();
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> ids;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) ids.push_back(i);
        int s = static_cast<int>(ids.size());
        VecX lam;
        if (s == 1) {
          lam = VecX::Ones(1);
        } else {
          // lambda = uniform + N mu with N an orthonormal basis of {sum = 0}
          Eigen::HouseholderQR<MatX> qr(MatX(VecX::Ones(s) / std::sqrt(double(s))));
          MatX nbasis = MatX(qr.householderQ()).rightCols(s - 1);
          MatX a(gen_chart_.rows(), s);
          for (int i = 0; i < s; ++i) a.col(i) = gen_chart_.col(ids[i]);
          VecX lam0 = VecX::Constant(s, 1.0 / s);
          VecX mu = (a * nbasis).colPivHouseholderQr().solve(VecX(x - a * lam0));
          lam = lam0 + nbasis * mu;
        }
        if ((lam.array() < -1e-12).any()) continue;
        Vec proj = Vec::Zero(gen_chart_.rows());
        for (int i = 0; i < s; ++i) proj += lam[i] * gen_chart_.col(ids[i]);
        best = std::min(best, (proj - x).norm());
      }
      return best;
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      best = std::min(best, (gen_chart_.col(i) - x).norm());
      for (int j = i + 1; j < n; ++j) {
        Vec d = gen_chart_.col(j) - gen_chart_.col(i);
        double t = d.squaredNorm() > 0 ? (x - gen_chart_.col(i)).dot(d) / d.squaredNorm() : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, (gen_chart_.col(i) + t * d - x).norm());
      }
    }
    return best;
  }

 private:
  std::shared_ptr<const ConvexDomain> domain_;
  std::vector<HomogeneousPoint> gens_;
  MatX gen_chart_;
  Vec base_chart_;
  bool has_interior_ = false;
};

// Deterministic sample of the ideal boundary of a subset: boundary
// generators, plus the boundary-classified portions of segments between
// them, deduplicated and thinned to at most n points.
inline std::vector<HomogeneousPoint> ideal_boundary_sample(const ConvexSubset& c, int n) {
  if (n <= 0) fail(errc::invalid_argument, "sample count must be positive");
  const ConvexDomain& dom = c.domain();
  std::vector<int> boundary_gens;
  for (int i = 0; i < c.size(); ++i)
    if (dom.classify(c.generators()[i]) == Region::Boundary) boundary_gens.push_back(i);
  if (boundary_gens.empty())
    fail(errc::bounded_subset, "subset closure does not meet the boundary");

  std::vector<HomogeneousPoint> out;
  auto push = [&](const HomogeneousPoint& p) {
    for (const auto& q : out)
      if (q.approx(p, tol::dedup)) return;
    out.push_back(p);
  };
  for (int i : boundary_gens) push(c.generators()[i]);
  const int steps = 64;
  for (std::size_t a = 0; a < boundary_gens.size(); ++a)
    for (std::size_t b = a + 1; b < boundary_gens.size(); ++b) {
      Vec xa = c.generator_chart().col(boundary_gens[a]);
      Vec xb = c.generator_chart().col(boundary_gens[b]);
      for (int s = 1; s < steps; ++s) {
        Vec x = xa + (static_cast<double>(s) / steps) * (xb - xa);
        HomogeneousPoint p = dom.point_from_chart(x);
        if (dom.classify(p) == Region::Boundary) push(p);
      }
    }
  if (static_cast<int>(out.size()) > n) {
    std::vector<HomogeneousPoint> thin;
    double stride = static_cast<double>(out.size()) / n;
    for (int i = 0; i < n; ++i) thin.push_back(out[static_cast<std::size_t>(i * stride)]);
    out = std::move(thin);
  }
  return out;
}

// B properly embedded in C: every sampled ideal point of B lies in the ideal
// boundary of C (boundary of the domain and within the hull of C).
inline bool is_properly_embedded(const ConvexSubset& b, const ConvexSubset& c,
                                 double geo_tol = tol::geo) {
  if (&b.domain() != &c.domain())
    fail(errc::invalid_argument, "subsets live in different domains");
  const ConvexDomain& dom = b.domain();
  for (const auto& g : b.generators())
    if (c.hull_chart_distance(dom.chart_point(g)) > std::max(geo_tol, 1e-6))
      fail(errc::not_a_subset, "B is not contained in the closure of C");
  std::vector<HomogeneousPoint> ideal;
  try {
    ideal = ideal_boundary_sample(b, 64);
  } catch (const error& e) {
    if (e.code() == errc::bounded_subset) return true;  // nothing ideal to check
    throw;
  }
  for (const auto& p : ideal) {
    if (dom.classify(p) != Region::Boundary) return false;
    if (c.hull_chart_distance(dom.chart_point(p)) > std::max(geo_tol, 1e-6)) return false;
  }
  return true;
}

// A projective k-simplex given by its vertices.
struct Simplex {
  std::vector<HomogeneousPoint> vertices;
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  ConvexDomain as_domain() const { return ConvexDomain::simplex(vertices); }
};

// Accepts the vertex list iff it spans a properly embedded simplex: vertices
// on the boundary, the vertex pairs whose edges lie in the boundary (dyadic
// midpoint refinement) form a connected graph, and the open hull is inside the
// domain. Vertex order is irrelevant.
inline std::optional<Simplex> detect_properly_embedded_simplex(
    const ConvexDomain& dom, const std::vector<HomogeneousPoint>& verts, int depth = 6) {
  int n = static_cast<int>(verts.size());
  if (n < 2) fail(errc::invalid_argument, "simplex needs at least two vertices");
  if (n > dom.ambient_dim()) fail(errc::dependent_vertices, "vertices are projectively dependent");
  Mat stack(dom.ambient_dim(), n);
  for (int i = 0; i < n; ++i) stack.col(i) = verts[i].rep();
  int rank = 0;
  detail::column_span(stack, &rank);
  if (rank != n) fail(errc::dependent_vertices, "vertices are projectively dependent");

  for (const auto& v : verts)
    if (dom.classify(v) != Region::Boundary) return std::nullopt;

  int steps = 1 << depth;
  std::vector<Vec> xs;
  xs.reserve(n);
  for (const auto& v : verts) xs.push_back(dom.chart_point(v));
  if (n >= 3) {
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto root = [&comp](int i) {
      while (comp[i] != i) i = comp[i] = comp[comp[i]];
      return i;
    };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        bool in_boundary = true;
        for (int s = 0; s <= steps && in_boundary; ++s) {
          Vec x = xs[i] + (static_cast<double>(s) / steps) * (xs[j] - xs[i]);
          in_boundary = dom.classify(dom.point_from_chart(x)) == Region::Boundary;
        }
        if (in_boundary) comp[root(i)] = root(j);
      }
    for (int i = 1; i < n; ++i)
      if (root(i) != root(0)) return std::nullopt;
  }
  // open hull inside the domain
  Rng rng(kDefaultSeed ^ 0x51u);
  Vec bary = Vec::Constant(n, 1.0 / n);
  for (int trial = 0; trial < 33; ++trial) {
    Vec w = bary;
    if (trial != 0) w = rng.dirichlet(n);
    Vec x = Vec::Zero(dom.chart_dim());
    for (int i = 0; i < n; ++i) x += w[i] * xs[i];
    if (dom.classify(dom.point_from_chart(x)) != Region::Interior) return std::nullopt;
  }
  return Simplex{verts};
}

}  // namespace hilbert
