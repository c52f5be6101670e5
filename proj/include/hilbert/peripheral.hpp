#pragma once

// Candidate peripheral families — group translates of unbounded convex
// subsets — and the empirical verifications built on them: window-relative
// strong-isolation diameters, coarse simplex containment, the closest-point
// projection onto a convex subset, a nearby-simplex search, and the structure
// constants of the translate configuration. Strong isolation is a statement
// over all radii and cannot be certified finitely; every report here is
// stamped with the sampling window it was measured in.

#include "hilbert/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hilbert {

struct PeripheralFamily {
  GeneratorSet gens;
  std::vector<ConvexSubset> representatives;
  int translate_word_len = 0;
  std::vector<ConvexSubset> translates;      // deduplicated orbit of the representatives
  std::vector<std::string> translate_words;  // acting word per translate
  std::vector<int> translate_rep;            // representative index per translate
  std::vector<GroupElement> elements;        // group elements behind the orbit
};

namespace detail {

inline bool same_point_set(const std::vector<HomogeneousPoint>& a,
                           const std::vector<HomogeneousPoint>& b) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& p : a) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j) {
      if (used[j]) continue;
      if (proj_dist(p.rep(), b[j].rep()) <= tol::dedup) {
        used[j] = 1;
        hit = true;
      }
    }
    if (!hit) return false;
  }
  return true;
}

// Bucketed dedup of endpoint sets, mirroring MatrixDedup: key by the rounded
// sum of canonical-representative entries (permutation invariant), verify
// candidates in the adjacent buckets pairwise.
class PointSetDedup {
 public:
  bool insert(const std::vector<HomogeneousPoint>& gens) {
    double s = 0.0;
    for (const auto& p : gens) s += p.rep().sum();
    long long q = std::llround(s / kGrid);
    for (long long k = q - 1; k <= q + 1; ++k) {
      auto [lo, hi] = buckets_.equal_range(k);
      for (auto it = lo; it != hi; ++it)
        if (same_point_set(gens, sets_[it->second])) return false;
    }
    buckets_.emplace(q, sets_.size());
    sets_.push_back(gens);
    return true;
  }

 private:
  static constexpr double kGrid = 1e-3;
  std::multimap<long long, std::size_t> buckets_;
  std::vector<std::vector<HomogeneousPoint>> sets_;
};

}  // namespace detail

// Gamma-orbit of the representatives up to the word length, deduplicated by
// endpoint set. Representatives must be unbounded (their closure touches the
// boundary); each translate records the acting word.
inline PeripheralFamily make_peripheral_family(const GeneratorSet& gens,
                                               std::vector<ConvexSubset> representatives,
                                               int word_len) {
  if (representatives.empty()) fail(errc::invalid_argument, "family needs a representative");
  const ConvexDomain& dom = gens.domain();
  for (const auto& rep : representatives) {
    if (&rep.domain() != &dom)
      fail(errc::invalid_argument, "representative lives in another domain");
    bool ideal = false;
    for (const auto& p : rep.generators())
      if (dom.classify(p) == Region::Boundary) ideal = true;
    if (!ideal) fail(errc::bounded_subset, "representative has no ideal points");
  }
  OrbitResult orbit = enumerate_orbit(gens, dom.base_point(), word_len);
  PeripheralFamily fam{gens, std::move(representatives), word_len,
                       {},   {},                         {},
                       std::move(orbit.elements)};
  detail::PointSetDedup dedup;
  for (const auto& e : fam.elements) {
    for (int j = 0; j < static_cast<int>(fam.representatives.size()); ++j) {
      ConvexSubset t = fam.representatives[j].translate(e.matrix);
      if (!dedup.insert(t.generators())) continue;
      fam.translates.push_back(std::move(t));
      fam.translate_words.push_back(e.word);
      fam.translate_rep.push_back(j);
    }
  }
  return fam;
}

// Sampled ideal boundary of each translate (empty when the closure misses the
// boundary); the membership primitive behind boundary-quotient decisions.
inline std::vector<std::vector<HomogeneousPoint>> family_ideal_samples(
    const PeripheralFamily& family, int per_translate = 8) {
  std::vector<std::vector<HomogeneousPoint>> out(family.translates.size());
  for (std::size_t i = 0; i < family.translates.size(); ++i) {
    try {
      out[i] = ideal_boundary_sample(family.translates[i], per_translate);
    } catch (const error& e) {
      if (e.code() != errc::bounded_subset) throw;
    }
  }
  return out;
}

// Hilbert-uniform interior samples of a subset within the window around p0:
// tanh-spaced chart grids along generator segments resolve depth ~12 from
// each segment midpoint, and Dirichlet points cover hulls with three or more
// generators.
inline std::vector<HomogeneousPoint> subset_window_samples(const ConvexDomain& dom,
                                                           const ConvexSubset& x,
                                                           const HomogeneousPoint& p0,
                                                           double window = tol::window) {
  std::vector<HomogeneousPoint> out;
  Vec pc = dom.chart_point(p0);
  auto keep = [&](const Vec& c) {
    if (!(dom.interior_margin(c) > 0)) return;
    if (detail::distance_chart(dom, pc, c) <= window) out.push_back(dom.point_from_chart(c));
  };
  const MatX& g = x.generator_chart();
  int m = x.size();
  if (m == 1) keep(Vec(g.col(0)));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = -96; k <= 96; ++k) {
        double t = 0.5 * (1.0 + std::tanh(0.125 * k));
        keep(Vec(g.col(i) + t * (g.col(j) - g.col(i))));
      }
  if (m >= 3) {
    Rng rng(kDefaultSeed ^ 0x73616d70ull);
    for (int k = 0; k < 160; ++k) keep(Vec(g * rng.dirichlet(m)));
  }
  return out;
}

struct PairDiameter {
  int first = 0;   // indices into family.translates
  int second = 0;
  double diameter = 0.0;
};

// The 2r filter keeps the points of the first member whose distance to the
// second is below 2r; this over-approximates the diameter of
// N(X1,r) /\ N(X2,r) by at most an additive 2r (triangle inequality through
// the overlap), absorbed in the reported scale.
struct IsolationReport {
  double r = 0.0;
  double window = tol::window;
  std::vector<int> window_translates;  // translates meeting the window
  std::vector<PairDiameter> pair_diameters;
  double D1_hat = 0.0;
  double D2_hat = 0.0;  // filled by simplex_coarse_containment
  double L_hat = 0.0;   // filled by structure_constants_report
  double R_hat = 0.0;
};

inline IsolationReport strong_isolation_report(const ConvexDomain& dom,
                                               const PeripheralFamily& family, double r,
                                               double window = tol::window) {
  if (!(r > 0) || !std::isfinite(r)) fail(errc::invalid_argument, "radius must be positive");
  HomogeneousPoint p0 = dom.base_point();
  IsolationReport rep;
  rep.r = r;
  rep.window = window;
  for (int i = 0; i < static_cast<int>(family.translates.size()); ++i) {
    try {
      if (distance_to_subset(dom, p0, family.translates[i]) <= window)
        rep.window_translates.push_back(i);
    } catch (const error& e) {
      if (e.code() != errc::not_interior) throw;  // hull misses the open domain
    }
  }
  int w = static_cast<int>(rep.window_translates.size());
  if (w < 2) fail(errc::too_few_translates, "fewer than two translates meet the window");

  std::vector<std::vector<HomogeneousPoint>> samples(w);
  for (int i = 0; i < w; ++i)
    samples[i] = subset_window_samples(dom, family.translates[rep.window_translates[i]], p0, window);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < w; ++i)
    for (int j = i + 1; j < w; ++j) pairs.emplace_back(i, j);
  rep.pair_diameters.resize(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      auto [i, j] = pairs[k];
      const ConvexSubset& other = family.translates[rep.window_translates[j]];
      std::vector<const HomogeneousPoint*> kept;
      for (const auto& s : samples[i])
        if (distance_to_subset(dom, s, other) < 2.0 * r) kept.push_back(&s);
      double diam = 0.0;
      for (std::size_t a = 0; a + 1 < kept.size(); ++a)
        for (std::size_t b = a + 1; b < kept.size(); ++b)
          diam = std::max(diam, hilbert_distance(dom, *kept[a], *kept[b]));
      rep.pair_diameters[k] = {rep.window_translates[i], rep.window_translates[j], diam};
    }
  });
  for (const auto& pd : rep.pair_diameters) rep.D1_hat = std::max(rep.D1_hat, pd.diameter);
  return rep;
}

struct SimplexContainmentReport {
  std::vector<double> radii;  // per simplex: best single family member cover
  double D2_hat = 0.0;
};

inline SimplexContainmentReport simplex_coarse_containment(const ConvexDomain& dom,
                                                           const PeripheralFamily& family,
                                                           const std::vector<Simplex>& simplices,
                                                           double window = tol::window) {
  if (&family.gens.domain() != &dom) fail(errc::invalid_argument, "family lives in another domain");
  SimplexContainmentReport rep;
  HomogeneousPoint p0 = dom.base_point();
  for (const auto& s : simplices) {
    if (!detect_properly_embedded_simplex(dom, s.vertices))
      fail(errc::not_properly_embedded, "simplex is not properly embedded");
    ConvexSubset hull(family.gens.domain_ptr(), s.vertices);
    auto pts = subset_window_samples(dom, hull, p0, window);
    double radius = 0.0;
    if (!pts.empty()) {
      radius = detail::kInf;
      for (const auto& x : family.translates) {
        double sup = 0.0;
        for (const auto& z : pts) {
          sup = std::max(sup, distance_to_subset(dom, z, x));
          if (sup >= radius) break;  // cannot beat the current best cover
        }
        radius = std::min(radius, sup);
      }
    }
    rep.radii.push_back(radius);
    rep.D2_hat = std::max(rep.D2_hat, radius);
  }
  return rep;
}

struct ProjectionResult {
  HomogeneousPoint minimizer;
  double value = 0.0;       // +inf when p is ideal (accumulation-of-projections mode)
  double certificate = 0.0; // best sampled value minus returned value
};

// Closest-point projection onto a convex subset. Interior p minimizes
// directly; ideal p follows the ray [base, p) at depths k*window/4 and
// returns the deepest projection, unless the projections themselves leave
// the window — then p lies in the closed face of the subset's ideal boundary
// and the projection set is empty.
inline ProjectionResult closest_point_projection(const ConvexDomain& dom, const ConvexSubset& x,
                                                 const HomogeneousPoint& p,
                                                 double window = tol::window,
                                                 std::uint64_t seed = kDefaultSeed) {
  Region where = dom.classify(p);
  if (where == Region::Outside) fail(errc::outside_point, "point lies outside the closure");

  if (where == Region::Interior) {
    SubsetMinimizer sm = minimize_over_subset(dom, p, x);
    Vec pc = dom.chart_point(p);
    const MatX& g = x.generator_chart();
    int m = x.size();
    double grid_best = detail::kInf;
    for (int i = 0; i < m; ++i) {
      grid_best = std::min(grid_best, detail::distance_chart(dom, pc, Vec(g.col(i))));
      for (int j = i + 1; j < m; ++j)
        for (int k = 0; k <= 32; ++k) {
          Vec c = g.col(i) + (k / 32.0) * (g.col(j) - g.col(i));
          grid_best = std::min(grid_best, detail::distance_chart(dom, pc, c));
        }
    }
    if (m >= 3) {
      Rng rng(seed ^ 0x70726f6aull);
      for (int k = 0; k < 64; ++k)
        grid_best = std::min(grid_best, detail::distance_chart(dom, pc, Vec(g * rng.dirichlet(m))));
    }
    return {sm.point, sm.value, grid_best - sm.value};
  }

  HomogeneousPoint p0 = dom.base_point();
  Vec c0 = dom.base_chart();
  Vec dir = dom.chart_point(p) - c0;
  if (dir.norm() < 1e-14) fail(errc::numeric_failure, "ideal point coincides with the base");
  auto iv = dom.clip_line(c0, dir);
  if (!iv) fail(errc::numeric_failure, "ray toward the ideal point failed");
  double t_lo = iv->first, t_hi = iv->second, lam0 = -t_lo / t_hi;
  SubsetMinimizer last;
  double last_depth = -1.0;
  // Probe depths top out at window + 1: past the window certifies escape,
  // while the probes stay clear of the boundary classification band.
  for (int k = 1; k <= 8; ++k) {
    double lam = lam0 * std::exp(2.0 * (k * (window + 1.0) / 8.0));
    double t = (t_lo + t_hi * lam) / (1.0 + lam);
    try {
      last = minimize_over_subset(dom, dom.point_from_chart(Vec(c0 + t * dir)), x);
    } catch (const error& e) {
      if (e.code() != errc::not_interior || last_depth < 0.0) throw;
      break;  // the probe saturated the chart; keep the deepest finished one
    }
    last_depth = hilbert_distance(dom, p0, last.point);
  }
  if (last_depth > window)
    fail(errc::projection_escapes,
         "ray projections leave the window: the ideal point lies in the subset's boundary face");
  return {last.point, detail::kInf, 0.0};
}

struct ProjectionObservationReport {
  ProjectionResult projection;
  double sub_segment_defect = 0.0;  // max |d(q,X) - d(q,x*)| over sampled q in [x*, p]
  double equivariance_gap = 0.0;    // max over generators g of d(g x*, proj(g p, g X))
  bool sub_segment_ok = false;
  bool equivariance_ok = false;
  bool ok = false;
};

// The projection observation: points q on the segment [x*, p] still project
// to x* (their subset distance equals d(q, x*)), and projecting commutes with
// the group action.
inline ProjectionObservationReport check_projection_observation(const GeneratorSet& gens,
                                                                const ConvexSubset& x,
                                                                const HomogeneousPoint& p) {
  const ConvexDomain& dom = gens.domain();
  if (dom.classify(p) != Region::Interior) fail(errc::not_interior, "observation needs interior p");
  ProjectionObservationReport rep;
  rep.projection = closest_point_projection(dom, x, p);
  const HomogeneousPoint& xstar = rep.projection.minimizer;

  if (hilbert_distance(dom, xstar, p) > 1e-12) {
    for (int k = 1; k <= 5; ++k) {
      HomogeneousPoint q = geodesic_point(dom, xstar, p, k / 6.0);
      double defect = std::abs(distance_to_subset(dom, q, x) - hilbert_distance(dom, q, xstar));
      rep.sub_segment_defect = std::max(rep.sub_segment_defect, defect);
    }
  }
  rep.sub_segment_ok = rep.sub_segment_defect <= tol::opt;

  for (int i = 0; i < gens.size(); ++i) {
    const ProjectiveMap& g = gens.generator(i);
    ProjectionResult moved = closest_point_projection(dom, x.translate(g), g.apply(p));
    double gap = hilbert_distance(dom, g.apply(xstar), moved.minimizer);
    rep.equivariance_gap = std::max(rep.equivariance_gap, gap);
  }
  rep.equivariance_ok = rep.equivariance_gap <= 10.0 * tol::opt;
  rep.ok = rep.sub_segment_ok && rep.equivariance_ok;
  return rep;
}

// Searches a finite vertex pool — the input ideal points, the extreme points
// of their faces, and boundary exits of the line through q and the face
// midpoint — for a properly embedded simplex whose eps-neighborhood covers
// the sampled r-ball slice about q. A miss means "not found", not
// nonexistence.
inline std::optional<Simplex> find_nearby_simplex(const ConvexDomain& dom, const ConvexSubset& c,
                                                  const HomogeneousPoint& a,
                                                  const HomogeneousPoint& b,
                                                  const HomogeneousPoint& q, double r, double eps) {
  if (&c.domain() != &dom) fail(errc::invalid_argument, "subset lives in another domain");
  if (dom.classify(a) != Region::Boundary || dom.classify(b) != Region::Boundary)
    fail(errc::not_ideal_point, "a and b must be ideal points");
  if (!dom.same_face(a, b)) fail(errc::face_mismatch, "a and b lie in different faces");
  Vec cq = detail::require_interior_chart(dom, q);
  if (c.hull_chart_distance(cq) > 1e-3) fail(errc::not_a_subset, "q is not a point of C");

  std::vector<HomogeneousPoint> pool;
  auto push = [&](const HomogeneousPoint& v) {
    for (const auto& u : pool)
      if (proj_dist(u.rep(), v.rep()) <= tol::dedup) return;
    pool.push_back(v);
  };
  auto push_face = [&](const HomogeneousPoint& v) {
    for (int id : dom.face_of(v).vertex_ids) push(dom.vertices()[id]);
    push(v);
  };
  push_face(a);
  push(b);
  Vec cm = 0.5 * (dom.chart_point(a) + dom.chart_point(b));
  if ((cq - cm).norm() > 1e-12) {
    push_face(dom.ray_boundary_exit(cq, Vec(cq - cm)));  // away from the shared face
    push_face(dom.ray_boundary_exit(cq, Vec(cm - cq)));  // back toward it
  }

  // Slice samples: the r-ball about q in the plane through a, b, q.
  Vec u1 = dom.chart_point(a) - cq;
  u1 /= u1.norm();
  Vec u2 = dom.chart_point(b) - cq;
  u2 -= u1.dot(u2) * u1;
  if (u2.norm() < 1e-10) {
    int best = 0;
    double rej = -1.0;
    for (int i = 0; i < cq.size(); ++i) {
      Vec e = Vec::Unit(cq.size(), i);
      double s = (e - u1.dot(e) * u1).norm();
      if (s > rej) {
        rej = s;
        best = i;
      }
    }
    Vec e = Vec::Unit(cq.size(), best);
    u2 = e - u1.dot(e) * u1;
  }
  u2 /= u2.norm();
  std::vector<HomogeneousPoint> slice = {q};
  for (int ang = 0; ang < 16; ++ang) {
    double th = 2.0 * std::numbers::pi * ang / 16.0;
    Vec w = std::cos(th) * u1 + std::sin(th) * u2;
    auto iv = dom.clip_line(cq, w);
    if (!iv) continue;
    double lam0 = -iv->first / iv->second;
    for (int j = 1; j <= 4; ++j) {
      double lam = lam0 * std::exp(2.0 * (r * j / 4.0));
      double t = (iv->first + iv->second * lam) / (1.0 + lam);
      slice.push_back(dom.point_from_chart(Vec(cq + t * w)));
    }
  }

  int k = dom.chart_dim() + 1;
  int n = static_cast<int>(pool.size());
  if (n < k) return std::nullopt;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    std::vector<HomogeneousPoint> verts;
    verts.reserve(k);
    for (int id : comb) verts.push_back(pool[id]);
    std::optional<Simplex> s;
    try {
      s = detect_properly_embedded_simplex(dom, verts);
    } catch (const error& e) {
      if (e.code() != errc::dependent_vertices) throw;
    }
    if (s) {
      ConvexSubset hull(c.domain_ptr(), s->vertices);
      bool covered = true;
      for (const auto& z : slice)
        if (distance_to_subset(dom, z, hull) > eps) {
          covered = false;
          break;
        }
      if (covered) return s;
    }
    int i = k - 1;
    while (i >= 0 && comb[i] == n - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return std::nullopt;
}

struct StructureConstantsReport {
  bool face_disjoint = true;
  std::vector<std::pair<int, int>> face_violations;  // translate index pairs
  double L_hat = 0.0;
  double R_hat = 0.0;
  std::vector<double> cocompact_radius;  // per translate; 0 when it misses the window
};

// Empirical structure constants of the translate configuration: pairwise
// face-disjointness of ideal boundaries, the largest face diameter seen on
// non-family ideal points of C (L_hat), the largest face-vs-ideal-trace gap
// over family members (R_hat, window-limited), and the covering radius of
// each window translate by the stabilizer orbit of the basepoint ball.
inline StructureConstantsReport structure_constants_report(const ConvexDomain& dom,
                                                           const ConvexSubset& c,
                                                           const PeripheralFamily& family,
                                                           double window = tol::window) {
  if (&c.domain() != &dom || &family.gens.domain() != &dom)
    fail(errc::invalid_argument, "inputs live in different domains");
  StructureConstantsReport rep;
  auto ideal = family_ideal_samples(family);
  std::vector<std::vector<FaceSignature>> sig(ideal.size());
  for (std::size_t i = 0; i < ideal.size(); ++i)
    for (const auto& p : ideal[i]) sig[i].push_back(dom.face_of(p).signature);

  for (std::size_t i = 0; i < sig.size(); ++i)
    for (std::size_t j = i + 1; j < sig.size(); ++j) {
      bool shared = false;
      for (const auto& si : sig[i]) {
        for (const auto& sj : sig[j])
          if (si.equal(sj)) {
            shared = true;
            break;
          }
        if (shared) break;
      }
      if (shared) {
        rep.face_disjoint = false;
        rep.face_violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }

  std::vector<HomogeneousPoint> core_ideal;
  try {
    core_ideal = ideal_boundary_sample(c, 64);
  } catch (const error& e) {
    if (e.code() != errc::bounded_subset) throw;
    fail(errc::too_few_samples, "C has no sampled ideal points");
  }
  std::vector<FaceSignature> core_sig;
  core_sig.reserve(core_ideal.size());
  for (const auto& p : core_ideal) core_sig.push_back(dom.face_of(p).signature);
  auto in_family = [&](const FaceSignature& s) {
    for (const auto& per : sig)
      for (const auto& t : per)
        if (s.equal(t)) return true;
    return false;
  };
  for (std::size_t i = 0; i < core_ideal.size(); ++i) {
    if (in_family(core_sig[i])) continue;
    Face f = dom.face_of(core_ideal[i]);
    if (f.dim == 0) continue;
    ConvexDomain fd = dom.face_domain(f);
    for (std::size_t j = i + 1; j < core_ideal.size(); ++j)
      if (core_sig[i].equal(core_sig[j])) {
        try {
          rep.L_hat = std::max(rep.L_hat, hilbert_distance(fd, core_ideal[i], core_ideal[j]));
        } catch (const error& e) {
          if (e.code() != errc::not_interior) throw;  // sample sits on the face's edge
        }
      }
  }

  for (std::size_t i = 0; i < ideal.size(); ++i) {
    for (std::size_t a = 0; a < ideal[i].size(); ++a) {
      Face f = dom.face_of(ideal[i][a]);
      if (f.dim == 0) continue;
      ConvexDomain fd = dom.face_domain(f);
      Rng rng(kDefaultSeed ^ 0x52686174ull ^ (0x9e3779b9ull * i));
      HomogeneousPoint fb = fd.base_point();
      for (const auto& probe : fd.sample_interior(16, rng)) {
        if (hilbert_distance(fd, fb, probe) > window) continue;
        double best = detail::kInf;
        for (std::size_t bgt = 0; bgt < ideal[i].size(); ++bgt) {
          if (!sig[i][a].equal(sig[i][bgt])) continue;
          try {
            best = std::min(best, hilbert_distance(fd, probe, ideal[i][bgt]));
          } catch (const error& e) {
            if (e.code() != errc::not_interior) throw;
          }
        }
        if (std::isfinite(best)) rep.R_hat = std::max(rep.R_hat, best);
      }
    }
  }

  HomogeneousPoint p0 = dom.base_point();
  rep.cocompact_radius.assign(family.translates.size(), 0.0);
  for (std::size_t i = 0; i < family.translates.size(); ++i) {
    const ConvexSubset& x = family.translates[i];
    double near = detail::kInf;
    try {
      near = distance_to_subset(dom, p0, x);
    } catch (const error& e) {
      if (e.code() != errc::not_interior) throw;
    }
    if (!(near <= window)) continue;
    std::vector<HomogeneousPoint> stab_orbit;
    for (const auto& e : family.elements) {
      std::vector<HomogeneousPoint> mapped;
      mapped.reserve(x.generators().size());
      for (const auto& gp : x.generators()) mapped.push_back(e.matrix.apply(gp));
      if (detail::same_point_set(mapped, x.generators()))
        stab_orbit.push_back(e.matrix.apply(p0));
    }
    double radius = 0.0;
    for (const auto& s : subset_window_samples(dom, x, p0, window)) {
      double best = detail::kInf;
      for (const auto& gp0 : stab_orbit) best = std::min(best, hilbert_distance(dom, s, gp0));
      if (std::isfinite(best)) radius = std::max(radius, best);
    }
    rep.cocompact_radius[i] = radius;
  }
  return rep;
}

}  // namespace hilbert
