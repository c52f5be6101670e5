#pragma once

// Projective building blocks: points of P(R^d) and maps of PGL(d,R) in
// canonical normal form, limits of projective maps inside P(End(R^d)),
// affine charts, and the cross-ratio of four collinear points.
//
// Canonical representatives make equality-up-to-scale testable: vectors are
// scaled to Euclidean norm 1 with the first significant entry positive,
// matrices to Frobenius norm 1 with the first significant entry (row-major
// scan) positive. Canonicalization is idempotent bit for bit: an input that
// is already canonical is returned unchanged.

#include "hilbert/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace hilbert {

namespace detail {

inline constexpr double kSignificant = 1e-12;  // relative cutoff for the sign scan

inline int leading_index(const double* data, int n, double scale) {
  double cut = kSignificant * scale;
  for (int i = 0; i < n; ++i)
    if (std::abs(data[i]) > cut) return i;
  return -1;
}

}  // namespace detail

inline Vec canonical_vector(const Vec& v) {
  double n2 = v.squaredNorm();
  if (!(n2 > 0) || !std::isfinite(n2)) fail(errc::invalid_argument, "zero or non-finite vector");
  double n = std::sqrt(n2);
  int lead = detail::leading_index(v.data(), static_cast<int>(v.size()), n);
  if (lead < 0) fail(errc::invalid_argument, "vector below significance threshold");
  // Fast path keeps canonicalization bitwise idempotent.
  if (std::abs(n2 - 1.0) <= 16 * std::numeric_limits<double>::epsilon() && v[lead] > 0) return v;
  Vec u = v / n;
  if (u[lead] < 0) u = -u;
  return u;
}

inline Mat canonical_matrix(const Mat& m) {
  double n2 = m.squaredNorm();
  if (!(n2 > 0) || !std::isfinite(n2)) fail(errc::invalid_argument, "zero or non-finite matrix");
  double n = std::sqrt(n2);
  // Row-major scan for the sign convention, independent of storage order.
  int lead_r = -1, lead_c = -1;
  double cut = detail::kSignificant * n;
  for (int r = 0; r < m.rows() && lead_r < 0; ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > cut) {
        lead_r = r;
        lead_c = c;
        break;
      }
  if (lead_r < 0) fail(errc::invalid_argument, "matrix below significance threshold");
  if (std::abs(n2 - 1.0) <= 16 * std::numeric_limits<double>::epsilon() && m(lead_r, lead_c) > 0)
    return m;
  Mat u = m / n;
  if (u(lead_r, lead_c) < 0) u = -u;
  return u;
}

// Distance between projective representatives, insensitive to the sign flip
// a borderline leading entry can produce.
inline double proj_dist(const Vec& a, const Vec& b) {
  return std::min((a - b).norm(), (a + b).norm());
}

inline double proj_dist(const Mat& a, const Mat& b) {
  return std::min((a - b).norm(), (a + b).norm());
}

class HomogeneousPoint {
 public:
  // Placeholder state for aggregate members; any real use overwrites it.
  HomogeneousPoint() : v_(Vec::Unit(2, 0)) {}

  explicit HomogeneousPoint(const Vec& rep) : v_(canonical_vector(rep)) {
    if (v_.size() < 2 || v_.size() > kMaxDim)
      fail(errc::invalid_argument, "ambient dimension must be in [2,8]");
  }

  const Vec& rep() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }

  bool approx(const HomogeneousPoint& o, double tolerance = tol::alg) const {
    return v_.size() == o.v_.size() && proj_dist(v_, o.v_) <= tolerance;
  }

 private:
  Vec v_;
};

class ProjectiveMap {
 public:
  explicit ProjectiveMap(const Mat& m) : m_(canonical_matrix(m)) {
    if (m_.rows() != m_.cols()) fail(errc::invalid_argument, "map must be square");
    if (m_.rows() < 2 || m_.rows() > kMaxDim)
      fail(errc::invalid_argument, "ambient dimension must be in [2,8]");
    // Invertibility at floating-point exactness. Diverging automorphism
    // sequences (the inputs of limit_of_maps) are legitimately ill
    // conditioned, so no fixed conditioning threshold is imposed here;
    // inverse() checks that its own result is usable.
    double det = m_.determinant();
    if (!std::isfinite(det) || !(std::abs(det) > 0))
      fail(errc::invalid_argument, "projective map must be invertible");
  }

  static ProjectiveMap identity(int d) { return ProjectiveMap(Mat::Identity(d, d)); }

  const Mat& rep() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  HomogeneousPoint apply(const HomogeneousPoint& p) const {
    if (p.dim() != dim()) fail(errc::invalid_argument, "dimension mismatch");
    return HomogeneousPoint(Vec(m_ * p.rep()));
  }

  ProjectiveMap inverse() const {
    Mat inv = m_.inverse();
    if (!inv.allFinite()) fail(errc::numeric_failure, "map is numerically singular");
    return ProjectiveMap(inv);
  }

  ProjectiveMap compose(const ProjectiveMap& o) const {
    if (o.dim() != dim()) fail(errc::invalid_argument, "dimension mismatch");
    return ProjectiveMap(Mat(m_ * o.m_));
  }

  bool approx(const ProjectiveMap& o, double tolerance = tol::alg) const {
    return m_.rows() == o.m_.rows() && proj_dist(m_, o.m_) <= tolerance;
  }

 private:
  Mat m_;
};

// A nonzero endomorphism up to scale, with kernel/image bases split off by
// SVD at the pinned rank cutoff. These arise as limits of diverging
// automorphism sequences.
class EndomorphismClass {
 public:
  explicit EndomorphismClass(const Mat& m) : m_(canonical_matrix(m)) {
    if (m_.rows() != m_.cols()) fail(errc::invalid_argument, "endomorphism must be square");
    Eigen::JacobiSVD<Mat> svd(m_, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double s0 = sv[0];
    rank_ = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv[i] > tol::rank * s0) ++rank_;
    int d = static_cast<int>(m_.rows());
    image_ = svd.matrixU().leftCols(rank_);
    kernel_ = svd.matrixV().rightCols(d - rank_);
  }

  const Mat& rep() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int rank() const { return rank_; }
  const Mat& kernel_basis() const { return kernel_; }
  const Mat& image_basis() const { return image_; }

  // Distance of a unit representative from the kernel subspace.
  double kernel_residual(const HomogeneousPoint& p) const {
    Vec v = p.rep();
    Vec proj = kernel_.cols() > 0 ? Vec(kernel_ * (kernel_.transpose() * v)) : Vec(Vec::Zero(v.size()));
    return (v - proj).norm();
  }

  bool approx(const EndomorphismClass& o, double tolerance = tol::alg) const {
    return m_.rows() == o.m_.rows() && proj_dist(m_, o.m_) <= tolerance;
  }

 private:
  Mat m_;
  Mat kernel_;
  Mat image_;
  int rank_;
};

inline HomogeneousPoint apply_endo(const EndomorphismClass& t, const HomogeneousPoint& p) {
  if (p.dim() != t.dim()) fail(errc::invalid_argument, "dimension mismatch");
  if (t.kernel_residual(p) <= tol::alg)
    fail(errc::kernel_point, "point lies in the kernel of the limit map");
  return HomogeneousPoint(Vec(t.rep() * p.rep()));
}

// Limit of a sequence of projective maps in P(End(R^d)). The canonical
// representatives must form a Cauchy tail: after sign alignment the final
// successive difference has to drop below the convergence tolerance.
inline EndomorphismClass limit_of_maps(const std::vector<ProjectiveMap>& seq,
                                       double tolerance = tol::conv) {
  if (seq.empty()) fail(errc::invalid_argument, "empty sequence");
  if (seq.size() == 1) return EndomorphismClass(seq[0].rep());
  Mat prev = seq[0].rep();
  double last_diff = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < seq.size(); ++i) {
    Mat cur = seq[i].rep();
    if ((cur + prev).norm() < (cur - prev).norm()) cur = -cur;  // align signs along the chain
    last_diff = (cur - prev).norm();
    prev = cur;
  }
  if (!(last_diff <= tolerance))
    fail(errc::not_converged, "no Cauchy tail in the canonical representatives");
  return EndomorphismClass(prev);
}

// Affine chart {x : b.x = 1} with unit covector. Chart coordinates are taken
// in a deterministic orthonormal basis of the complement (Householder
// completion), so for b = e1 they reduce to (x1/x0, ..., x_{d-1}/x0).
class AffineChart {
 public:
  explicit AffineChart(const Vec& covector) {
    double n = covector.norm();
    if (!(n > 0) || !std::isfinite(n)) fail(errc::invalid_argument, "zero chart covector");
    b_ = covector / n;
    int d = static_cast<int>(b_.size());
    Mat h = Mat::Identity(d, d);
    Vec w = b_;
    w[0] -= 1.0;  // reflector taking e1 to b (identity when b = e1)
    double wn2 = w.squaredNorm();
    if (wn2 > 1e-28) h -= (2.0 / wn2) * (w * w.transpose());
    basis_ = h.rightCols(d - 1);
    origin_ = b_;
  }

  int dim() const { return static_cast<int>(b_.size()); }
  const Vec& covector() const { return b_; }
  const Mat& basis() const { return basis_; }
  const Vec& origin() const { return origin_; }

  bool sees(const HomogeneousPoint& p, double margin = tol::chart_margin) const {
    return std::abs(b_.dot(p.rep())) > margin;
  }

  // Scaled representative with b.w = 1.
  Vec chart_rep(const HomogeneousPoint& p) const {
    double s = b_.dot(p.rep());
    if (std::abs(s) < 1e-14) fail(errc::outside_chart, "point at chart infinity");
    return p.rep() / s;
  }

  Vec to_chart(const HomogeneousPoint& p) const {
    Vec w = chart_rep(p);
    return basis_.transpose() * (w - origin_);
  }

  HomogeneousPoint from_chart(const Vec& x) const {
    if (x.size() != basis_.cols()) fail(errc::invalid_argument, "chart coordinate size mismatch");
    return HomogeneousPoint(Vec(origin_ + basis_ * x));
  }

 private:
  Vec b_;
  Mat basis_;
  Vec origin_;
};

namespace detail {

// Projective parameters of x against the pencil spanned by reps (u, w):
// x ~ alpha*u + beta*w, returned as beta/alpha. Requires the four points of a
// cross-ratio to be collinear, which is validated by the caller.
inline std::pair<double, double> pencil_coordinates(const Vec& u, const Vec& w, const Vec& x) {
  Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::ColMajor, kMaxDim, 2> basis(u.size(), 2);
  basis.col(0) = u;
  basis.col(1) = w;
  Eigen::Matrix<double, 2, 1> ab = basis.colPivHouseholderQr().solve(x);
  return {ab[0], ab[1]};
}

}  // namespace detail

// Cross-ratio [a,x,y,b] of collinear points ordered a,x,y,b along a segment;
// in any affine chart it equals (|x-b||y-a|) / (|x-a||y-b|) and is >= 1 for
// interior ordering. Computed chart-free through pencil parameters, which is
// equivalent and exactly invariant under projective maps.
inline double cross_ratio(const HomogeneousPoint& a, const HomogeneousPoint& x,
                          const HomogeneousPoint& y, const HomogeneousPoint& b) {
  int d = a.dim();
  if (x.dim() != d || y.dim() != d || b.dim() != d)
    fail(errc::invalid_argument, "dimension mismatch");
  Eigen::Matrix<double, 4, Eigen::Dynamic, Eigen::RowMajor, 4, kMaxDim> stack(4, d);
  stack.row(0) = a.rep().transpose();
  stack.row(1) = x.rep().transpose();
  stack.row(2) = y.rep().transpose();
  stack.row(3) = b.rep().transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, Eigen::Dynamic, Eigen::RowMajor, 4, kMaxDim>> svd(stack);
  const auto& sv = svd.singularValues();
  if (sv.size() >= 3 && sv[2] > tol::collinear * sv[0])
    fail(errc::not_collinear, "cross-ratio points are not collinear");
  if (x.approx(a)) fail(errc::degenerate_configuration, "x coincides with a");
  if (y.approx(b)) fail(errc::degenerate_configuration, "y coincides with b");

  auto [ax, bx] = detail::pencil_coordinates(a.rep(), b.rep(), x.rep());
  auto [ay, by] = detail::pencil_coordinates(a.rep(), b.rep(), y.rep());
  if (std::abs(ax) < 1e-300 || std::abs(ay) < 1e-300 || std::abs(bx) < 1e-300)
    fail(errc::degenerate_configuration, "cross-ratio parameters degenerate");
  double lx = bx / ax, ly = by / ay;
  double cr = ly / lx;
  if (!std::isfinite(cr)) fail(errc::numeric_failure, "cross-ratio overflow");
  return cr;
}

}  // namespace hilbert
