#pragma once

// Discrete subgroups of Aut(Omega): generator validation, reduced-word orbit
// enumeration, proximal fixed points and axes, limit sets, convex cores,
// convergence dynamics, and the built-in Coxeter / Schottky constructors.

#include "hilbert/metric.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hilbert {

inline constexpr int kWordCap = 10;
inline constexpr std::size_t kOrbitGuard = 1000000;

// Generators of a subgroup preserving a fixed domain, stored with their
// inverses. Letters are indexed 2i (generator i) and 2i+1 (its inverse);
// words print as 'a'..'z' for generators and 'A'..'Z' for inverses.
class GeneratorSet {
 public:
  GeneratorSet(std::shared_ptr<const ConvexDomain> domain, std::vector<ProjectiveMap> generators)
      : domain_(std::move(domain)), gens_(std::move(generators)) {
    if (!domain_) fail(errc::invalid_argument, "generator set needs a domain");
    if (gens_.size() > 26) fail(errc::invalid_argument, "at most 26 generators");
    invs_.reserve(gens_.size());
    for (const auto& g : gens_) {
      if (g.dim() != domain_->ambient_dim())
        fail(errc::invalid_argument, "generator dimension mismatch");
      invs_.push_back(g.inverse());
    }
    validate_preservation();
  }

  const ConvexDomain& domain() const { return *domain_; }
  std::shared_ptr<const ConvexDomain> domain_ptr() const { return domain_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const ProjectiveMap& generator(int i) const { return gens_[i]; }
  const ProjectiveMap& inverse(int i) const { return invs_[i]; }

  int letter_count() const { return 2 * size(); }
  const ProjectiveMap& letter(int r) const { return r % 2 == 0 ? gens_[r / 2] : invs_[r / 2]; }
  static char letter_char(int r) {
    return r % 2 == 0 ? static_cast<char>('a' + r / 2) : static_cast<char>('A' + r / 2);
  }

 private:
  // A generator preserves Omega when sampled boundary points stay on the
  // boundary and sampled interior points stay in the closure. (Images of
  // interior samples may come numerically closer to the boundary than the
  // membership tolerance under strong contraction, so Interior is asserted
  // as "not Outside" there; expansion is caught by the boundary samples.)
  void validate_preservation() const {
    if (gens_.empty()) return;
    Rng rng(kDefaultSeed ^ 0x67656eull);
    auto inner = domain_->sample_interior(24, rng);
    auto edge = domain_->sample_boundary(24, rng);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      for (const ProjectiveMap* m : {&gens_[i], &invs_[i]}) {
        for (const auto& p : inner)
          if (domain_->classify(m->apply(p)) == Region::Outside)
            fail(errc::domain_not_preserved, "generator " + std::to_string(i) +
                                                 " maps an interior point outside");
        for (const auto& p : edge)
          if (domain_->classify(m->apply(p)) != Region::Boundary)
            fail(errc::domain_not_preserved,
                 "generator " + std::to_string(i) + " does not preserve the boundary");
      }
    }
  }

  std::shared_ptr<const ConvexDomain> domain_;
  std::vector<ProjectiveMap> gens_;
  std::vector<ProjectiveMap> invs_;
};

struct GroupElement {
  std::string word;
  ProjectiveMap matrix;
};

struct OrbitResult {
  std::vector<GroupElement> elements;
  std::vector<HomogeneousPoint> orbit_points;
  std::vector<int> word_length_histogram;  // index = reduced word length
};

namespace detail {

// Dedup of canonical matrices on a quantized grid: bucket by the rounded
// entry sum, compare candidates in the adjacent buckets at full precision.
class MatrixDedup {
 public:
  explicit MatrixDedup(double grid) : grid_(grid) {}

  bool insert(const Mat& canon) {
    long long q = std::llround(canon.sum() / grid_);
    for (long long k = q - 1; k <= q + 1; ++k) {
      auto [lo, hi] = buckets_.equal_range(k);
      for (auto it = lo; it != hi; ++it)
        if (proj_dist(reps_[it->second], canon) <= grid_) return false;
    }
    buckets_.emplace(q, reps_.size());
    reps_.push_back(canon);
    return true;
  }

 private:
  double grid_;
  std::multimap<long long, std::size_t> buckets_;
  std::vector<Mat> reps_;
};

}  // namespace detail

// BFS over reduced words, deduplicated by quantized canonical matrix.
// Expansion appends letters in index order, so elements come out sorted by
// (word length, lexicographic rank) and runs are byte-for-byte identical.
inline OrbitResult enumerate_orbit(const GeneratorSet& gens, const HomogeneousPoint& basepoint,
                                   int max_word_len) {
  const ConvexDomain& dom = gens.domain();
  if (dom.classify(basepoint) != Region::Interior)
    fail(errc::not_interior, "orbit basepoint must be interior");
  if (max_word_len < 0 || max_word_len > kWordCap)
    fail(errc::invalid_argument,
         "word length must be in [0," + std::to_string(kWordCap) + "]");

  OrbitResult res;
  detail::MatrixDedup table(tol::grid);
  ProjectiveMap id = ProjectiveMap::identity(dom.ambient_dim());
  table.insert(id.rep());
  res.elements.push_back({std::string(), id});
  std::vector<int> last_rank = {-1};
  std::size_t level_lo = 0, level_hi = 1;

  for (int len = 1; len <= max_word_len && level_lo < level_hi; ++len) {
    for (std::size_t p = level_lo; p < level_hi; ++p) {
      const Mat parent = res.elements[p].matrix.rep();
      const std::string word = res.elements[p].word;
      const int parent_rank = last_rank[p];
      for (int r = 0; r < gens.letter_count(); ++r) {
        if (parent_rank >= 0 && (parent_rank ^ 1) == r) continue;  // reduced words only
        // Deeply contracted words can round to an exactly singular product;
        // they lie beyond usable chart precision, so the branch is dropped.
        std::optional<ProjectiveMap> child;
        try {
          child.emplace(Mat(parent * gens.letter(r).rep()));
        } catch (const error& e) {
          if (e.code() != errc::invalid_argument) throw;
          continue;
        }
        if (!table.insert(child->rep())) continue;
        if (res.elements.size() >= kOrbitGuard)
          fail(errc::invalid_argument, "orbit exceeds the 10^6 element guard");
        res.elements.push_back({word + GeneratorSet::letter_char(r), *child});
        last_rank.push_back(r);
      }
    }
    level_lo = level_hi;
    level_hi = res.elements.size();
  }

  res.orbit_points.reserve(res.elements.size());
  for (const auto& e : res.elements) res.orbit_points.push_back(e.matrix.apply(basepoint));
  res.word_length_histogram.assign(max_word_len + 1, 0);
  for (const auto& e : res.elements) ++res.word_length_histogram[e.word.size()];
  return res;
}

inline double translation_distance(const ConvexDomain& dom, const ProjectiveMap& g,
                                   const HomogeneousPoint& p) {
  return hilbert_distance(dom, p, g.apply(p));
}

// Leading eigenvector and spectral gap |l1/l2| of a proximal map.
inline std::pair<HomogeneousPoint, double> attracting_fixed_point(const ProjectiveMap& g) {
  Eigen::EigenSolver<Mat> es(g.rep());
  if (es.info() != Eigen::Success) fail(errc::numeric_failure, "eigendecomposition failed");
  const auto& ev = es.eigenvalues();
  int d = g.dim(), imax = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(ev[i]) > std::abs(ev[imax])) imax = i;
  double m1 = std::abs(ev[imax]), m2 = 0.0;
  for (int i = 0; i < d; ++i)
    if (i != imax) m2 = std::max(m2, std::abs(ev[i]));
  if (!(m1 > 0.0) || !(m2 > 0.0)) fail(errc::numeric_failure, "degenerate spectrum");
  double gap = m1 / m2;
  if (!(gap > 1.0 + tol::prox)) fail(errc::not_proximal, "spectral gap too small");
  if (std::abs(ev[imax].imag()) > tol::alg * m1)
    fail(errc::not_proximal, "leading eigenvalue is not real");

  auto col = es.eigenvectors().col(imax).eval();
  int big = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(col[i]) > std::abs(col[big])) big = i;
  col /= col[big];
  Vec v(d);
  double imag_resid = 0.0;
  for (int i = 0; i < d; ++i) {
    v[i] = col[i].real();
    imag_resid = std::max(imag_resid, std::abs(col[i].imag()));
  }
  if (imag_resid > 1e-8) fail(errc::not_proximal, "leading eigenvector is not real");
  return {HomogeneousPoint(v), gap};
}

// Segment between the attracting fixed points of g and g^-1. Axes along a
// boundary face are legitimate (diagonal maps on a simplex); only fixed
// points outside the closure reject the axis.
inline ConvexSubset axis_of(std::shared_ptr<const ConvexDomain> dom, const ProjectiveMap& g) {
  if (!dom) fail(errc::invalid_argument, "axis needs a domain");
  HomogeneousPoint fwd = attracting_fixed_point(g).first;
  HomogeneousPoint bwd = attracting_fixed_point(g.inverse()).first;
  if (dom->classify(fwd) == Region::Outside || dom->classify(bwd) == Region::Outside)
    fail(errc::axis_misses_domain, "a fixed point lies outside the closure");
  ConvexSubset axis(dom, {fwd, bwd});

  Vec c0 = dom->chart_point(fwd), c1 = dom->chart_point(bwd);
  Vec u = c1 - c0;
  double un = u.norm();
  if (un > 1e-12) {
    Vec ud = u / un;
    for (double s : {0.2, 0.4, 0.6, 0.8}) {
      HomogeneousPoint z = dom->point_from_chart(Vec(c0 + s * u));
      auto img = dom->try_chart_point(g.apply(z));
      if (!img) fail(errc::numeric_failure, "axis image left the chart");
      Vec w = *img - c0;
      double resid = (w - ud.dot(w) * ud).norm();
      if (resid > tol::geo * (1.0 + w.norm()))
        fail(errc::numeric_failure, "axis is not g-invariant");
    }
  }
  return axis;
}

struct LimitSetApprox {
  enum class Provenance { OrbitAccumulation, AttractingEigenvector };
  std::vector<HomogeneousPoint> points;
  std::vector<Provenance> provenance;
  std::vector<double> gaps;  // spectral gap for eigenvector points, 0 otherwise
};

// Attracting fixed points of enumerated proximal elements, plus orbit points
// that came within the accumulation band of the boundary (pushed onto it
// along the ray from the domain base). Deduplicated keep-first, so the
// eigenvector provenance wins where both detect the same point.
inline LimitSetApprox limit_set_approx(const GeneratorSet& gens, const HomogeneousPoint& basepoint,
                                       int max_word_len) {
  OrbitResult orb = enumerate_orbit(gens, basepoint, max_word_len);
  const ConvexDomain& dom = gens.domain();
  LimitSetApprox out;
  auto push = [&](const HomogeneousPoint& p, LimitSetApprox::Provenance prov, double gap) {
    for (const auto& q : out.points)
      if (proj_dist(q.rep(), p.rep()) <= tol::dedup) return;
    out.points.push_back(p);
    out.provenance.push_back(prov);
    out.gaps.push_back(gap);
  };

  for (std::size_t i = 1; i < orb.elements.size(); ++i) {
    try {
      auto [p, gap] = attracting_fixed_point(orb.elements[i].matrix);
      if (dom.classify(p) == Region::Boundary)
        push(p, LimitSetApprox::Provenance::AttractingEigenvector, gap);
    } catch (const error& e) {
      if (e.code() != errc::not_proximal) throw;
    }
  }

  const Vec& base = dom.base_chart();
  for (const auto& op : orb.orbit_points) {
    Vec c = dom.chart_point(op);
    if (dom.interior_margin(c) >= tol::acc) continue;
    Vec dir = c - base;
    if (dir.norm() < 1e-12) continue;
    push(dom.ray_boundary_exit(base, dir), LimitSetApprox::Provenance::OrbitAccumulation, 0.0);
  }
  return out;
}

inline ConvexSubset convex_core_approx(const GeneratorSet& gens, int max_word_len) {
  LimitSetApprox ls = limit_set_approx(gens, gens.domain().base_point(), max_word_len);
  if (ls.points.empty()) fail(errc::empty_limit_set, "no limit points at this word length");
  return ConvexSubset(gens.domain_ptr(), ls.points);
}

struct ConvergenceDynamicsReport {
  HomogeneousPoint limit_x;  // forward boundary limit of g_n(p0)
  HomogeneousPoint limit_y;  // backward boundary limit of g_n^-1(p0)
  EndomorphismClass T;       // limit of the maps in P(End)
  bool image_in_face_span = false;     // image(T) subset of Span F(x)
  bool kernel_avoids_domain = false;   // P(ker T) misses the open domain
  bool backward_limit_in_kernel = false;
  double track_sup = 0.0;  // sup distance of g_n(p0) from the ray [p0, x)
  bool track_bounded = false;
  bool maps_onto_face = false;  // T(Omega) = F(x), sampled; checked when tracked
  bool ok = false;
};

namespace detail {
inline constexpr double kTrackBound = 2.0;     // orbit-vs-ray escape threshold
inline constexpr double kFaceCoverage = 1.5;   // onto-face sampling resolution
}  // namespace detail

inline ConvergenceDynamicsReport check_convergence_dynamics(const ConvexDomain& dom,
                                                            const std::vector<ProjectiveMap>& seq,
                                                            const HomogeneousPoint& p0) {
  if (seq.size() < 3) fail(errc::invalid_argument, "need at least three maps");
  std::vector<HomogeneousPoint> fwd, bwd;
  fwd.reserve(seq.size());
  bwd.reserve(seq.size());
  for (const auto& g : seq) {
    fwd.push_back(g.apply(p0));
    bwd.push_back(g.inverse().apply(p0));
  }
  // Deep orbit tails saturate the chart (margins round to zero) while the
  // matrix sequence is still resolving, so limits and ray tracking use only
  // the strictly interior, still-moving prefix of the point sequences.
  auto tracked_prefix = [&dom](const std::vector<HomogeneousPoint>& pts) {
    std::vector<HomogeneousPoint> out;
    Vec prev;
    for (const auto& p : pts) {
      auto c = dom.try_chart_point(p);
      if (!c || !(dom.interior_margin(*c) > 0)) break;
      if (!out.empty() && (*c - prev).norm() < 1e-12) break;
      out.push_back(p);
      prev = *c;
    }
    return out;
  };
  std::vector<HomogeneousPoint> fwd_t = tracked_prefix(fwd), bwd_t = tracked_prefix(bwd);
  HomogeneousPoint x, y;
  try {
    x = detail::sequence_boundary_limit(dom, fwd_t);
    y = detail::sequence_boundary_limit(dom, bwd_t);
  } catch (const error& e) {
    if (e.code() == errc::not_converging) fail(errc::not_converged, e.what());
    throw;
  }
  EndomorphismClass T = limit_of_maps(seq);
  ConvergenceDynamicsReport rep{x, y, T};

  Face fx = dom.face_of(x);
  rep.image_in_face_span = true;
  for (int i = 0; i < T.image_basis().cols(); ++i) {
    Vec u = T.image_basis().col(i);
    if ((u - fx.span * (fx.span.transpose() * u)).norm() > tol::alg) rep.image_in_face_span = false;
  }

  rep.kernel_avoids_domain = true;
  const Mat& ker = T.kernel_basis();
  if (ker.cols() > 0) {
    Rng rng(kDefaultSeed ^ 0x6b65726eull);
    for (int i = 0; i < ker.cols() + 64; ++i) {
      Vec w = i < ker.cols() ? Vec(Vec::Unit(ker.cols(), i))
                             : rng.unit_vector(static_cast<int>(ker.cols()));
      if (dom.classify(HomogeneousPoint(Vec(ker * w))) == Region::Interior)
        rep.kernel_avoids_domain = false;
    }
  }

  rep.backward_limit_in_kernel = T.kernel_residual(y) <= tol::alg;

  // Distance of each forward orbit point from the equally deep point on the
  // chart ray [p0, x); lambda = (t - t_lo)/(t_hi - t) grows as exp(2 d).
  Vec c0 = dom.chart_point(p0), cx = dom.chart_point(x);
  auto iv = dom.clip_line(c0, Vec(cx - c0));
  if (!iv) fail(errc::numeric_failure, "ray toward the limit failed");
  double t_lo = iv->first, t_hi = iv->second, lam0 = -t_lo / t_hi;
  rep.track_sup = 0.0;
  for (const auto& q : fwd_t) {
    double dq = hilbert_distance(dom, p0, q);
    double lam = lam0 * std::exp(2.0 * dq);
    double tq = (t_lo + t_hi * lam) / (1.0 + lam);
    HomogeneousPoint on_ray = dom.point_from_chart(Vec(c0 + tq * (cx - c0)));
    rep.track_sup = std::max(rep.track_sup, hilbert_distance(dom, q, on_ray));
  }
  rep.track_bounded = rep.track_sup <= detail::kTrackBound;

  if (rep.track_bounded) {
    Rng rng(kDefaultSeed ^ 0x64796eull);
    auto samples = dom.sample_interior(200, rng);
    bool in_face = true;
    std::vector<HomogeneousPoint> images;
    images.reserve(samples.size());
    for (const auto& z : samples) {
      try {
        HomogeneousPoint img = apply_endo(T, z);
        if (dom.same_face(img, x))
          images.push_back(img);
        else
          in_face = false;
      } catch (const error& e) {
        if (e.code() != errc::kernel_point) throw;
        in_face = false;
      }
    }
    bool onto = in_face;
    if (in_face && fx.dim >= 1) {
      ConvexDomain fd = dom.face_domain(fx);
      Rng rng2(kDefaultSeed ^ 0x666163ull);
      for (const auto& probe : fd.sample_interior(16, rng2)) {
        double best = detail::kInf;
        for (const auto& img : images)
          best = std::min(best, hilbert_distance(fd, probe, img));
        if (best > detail::kFaceCoverage) onto = false;
      }
    }
    rep.maps_onto_face = in_face && onto;
  }
  rep.ok = rep.image_in_face_span && rep.kernel_avoids_domain && rep.backward_limit_in_kernel &&
           (!rep.track_bounded || rep.maps_onto_face);
  return rep;
}

// Reflection group from a Coxeter Gram matrix: sigma_i = Id - 2 B(., v_i)/B(v_i, v_i) v_i
// acting on the projectivized form cone. Mirror vectors default to the
// standard basis. Finite orders m_ij are read off the Gram angles and the
// corresponding relations are verified numerically.
inline std::pair<GeneratorSet, std::shared_ptr<const ConvexDomain>> coxeter_generators(
    const Mat& gram, const std::vector<Vec>& mirror_vectors = {}) {
  int d = static_cast<int>(gram.rows());
  if (gram.cols() != d) fail(errc::invalid_argument, "Gram matrix must be square");
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + gram.cwiseAbs().maxCoeff()))
    fail(errc::invalid_argument, "Gram matrix must be symmetric");

  std::vector<Vec> vs = mirror_vectors;
  if (vs.empty())
    for (int i = 0; i < d; ++i) vs.push_back(Vec(Vec::Unit(d, i)));
  for (const Vec& v : vs)
    if (v.size() != d) fail(errc::invalid_argument, "mirror vector dimension mismatch");

  auto domain = std::make_shared<const ConvexDomain>(ConvexDomain::ellipsoid(gram));

  int n = static_cast<int>(vs.size());
  std::vector<double> bii(n);
  std::vector<Mat> sigma;
  sigma.reserve(n);
  for (int i = 0; i < n; ++i) {
    bii[i] = vs[i].dot(gram * vs[i]);
    if (!(bii[i] > 0)) fail(errc::bad_signature, "mirror vector is not spacelike for the form");
    Mat s = Mat::Identity(d, d) - (2.0 / bii[i]) * (vs[i] * (gram * vs[i]).transpose());
    if ((s * s - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
      fail(errc::numeric_failure, "reflection is not an involution");
    sigma.push_back(std::move(s));
  }

  Mat idc = canonical_matrix(Mat::Identity(d, d));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double bij = vs[i].dot(gram * vs[j]);
      if (bij > 1e-12 * std::sqrt(bii[i] * bii[j]))
        fail(errc::invalid_argument, "mirror pair at acute angle (positive Gram entry)");
      double c = std::min(1.0, -bij / std::sqrt(bii[i] * bii[j]));
      if (c >= 1.0 - 1e-12) continue;  // m = infinity, no relation
      double order = std::numbers::pi / std::acos(c);
      long long m = std::llround(order);
      if (m < 2 || std::abs(order - static_cast<double>(m)) > 1e-6) continue;
      Mat prod = sigma[i] * sigma[j];
      Mat pw = Mat::Identity(d, d);
      for (long long k = 0; k < m; ++k) pw = Mat(pw * prod);
      if (proj_dist(canonical_matrix(pw), idc) > 1e-8)
        fail(errc::relation_violated, "(sigma_" + std::to_string(i) + " sigma_" +
                                          std::to_string(j) + ")^" + std::to_string(m) +
                                          " differs from the identity");
    }

  std::vector<ProjectiveMap> maps;
  maps.reserve(n);
  for (const Mat& s : sigma) maps.emplace_back(s);
  GeneratorSet gens(domain, std::move(maps));
  return {std::move(gens), domain};
}

// Gram matrix of the (p, q, r) triangle reflection group.
inline Mat coxeter_triangle_gram(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2) fail(errc::invalid_argument, "orders must be at least 2");
  Mat g = Mat::Identity(3, 3);
  g(0, 1) = g(1, 0) = -std::cos(std::numbers::pi / p);
  g(0, 2) = g(2, 0) = -std::cos(std::numbers::pi / q);
  g(1, 2) = g(2, 1) = -std::cos(std::numbers::pi / r);
  return g;
}

inline std::pair<GeneratorSet, std::shared_ptr<const ConvexDomain>> coxeter_triangle(int p, int q,
                                                                                     int r) {
  return coxeter_generators(coxeter_triangle_gram(p, q, r));
}

// Minimal translation length for disjoint ping-pong caps: boosts by t along
// chart axes separated by the given angle own the boundary caps
// {u : u.axis >= tanh(t/2)}, and the caps of distinct axes are disjoint when
// tanh(t/2) > cos(separation/2) on either side.
inline double schottky_min_translation(double angle) {
  double half = std::min(angle, std::numbers::pi - angle) / 2.0;
  double c = std::cos(half);
  if (!(c < 1.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::atanh(c);
}

// Two boosts of translation length t in the Beltrami-Klein ball, the second
// conjugated by a rotation of the chart plane. Freeness is validated up to
// word length 6 before the pair is accepted.
inline GeneratorSet schottky_pso21(double t, double angle) {
  if (!(t > 0) || !std::isfinite(t)) fail(errc::invalid_argument, "translation must be positive");
  if (!(angle > 0) || !(angle < std::numbers::pi))
    fail(errc::invalid_argument, "axis angle must lie in (0, pi)");
  double t_min = schottky_min_translation(angle);
  if (!(t >= t_min))
    fail(errc::ping_pong_fails,
         "translation too short for disjoint ping-pong caps (needs t >= " + std::to_string(t_min) +
             ")");

  Mat a = Mat::Identity(3, 3);
  a(0, 0) = a(1, 1) = std::cosh(t);
  a(0, 1) = a(1, 0) = std::sinh(t);
  Mat rot = Mat::Identity(3, 3);
  rot(1, 1) = rot(2, 2) = std::cos(angle);
  rot(1, 2) = -std::sin(angle);
  rot(2, 1) = std::sin(angle);
  Mat b = rot * a * rot.transpose();
  ProjectiveMap ga(a), gb(b);

  Mat letters[4] = {ga.rep(), ga.inverse().rep(), gb.rep(), gb.inverse().rep()};
  Mat idc = canonical_matrix(Mat::Identity(3, 3));
  std::vector<std::pair<Mat, int>> frontier = {{Mat(Mat::Identity(3, 3)), -1}};
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::pair<Mat, int>> next;
    next.reserve(frontier.size() * 3);
    for (const auto& [mat, last] : frontier)
      for (int r = 0; r < 4; ++r) {
        if (last >= 0 && (last ^ 1) == r) continue;
        Mat prod = canonical_matrix(Mat(mat * letters[r]));
        if (proj_dist(prod, idc) < 1e-6)
          fail(errc::ping_pong_fails,
               "nontrivial relation within 1e-6 at word length " + std::to_string(len));
        next.emplace_back(std::move(prod), r);
      }
    frontier = std::move(next);
  }

  auto ball = std::make_shared<const ConvexDomain>(ConvexDomain::unit_ball());
  return GeneratorSet(ball, {ga, gb});
}

}  // namespace hilbert
