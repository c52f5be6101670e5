#pragma once

// Finite-sample model of the boundary quotient: the equivalence identifying
// ideal points that share an open face or lie in the saturated ideal boundary
// of one family translate, its union-find closure into a class complex, and
// the conical / peripheral / unknown trichotomy for single ideal points. All
// decisions are sample-level: membership can miss faces thinner than the
// family's ideal sampling resolution.

#include "hilbert/peripheral.hpp"

#include <numeric>
#include <utility>
#include <vector>

namespace hilbert {

enum class PointClass { Conical, Peripheral, Unknown };

inline const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::Conical: return "Conical";
    case PointClass::Peripheral: return "Peripheral";
    default: return "Unknown";
  }
}

namespace detail {

inline std::vector<std::vector<FaceSignature>> family_ideal_signatures(
    const ConvexDomain& dom, const PeripheralFamily& family) {
  auto pts = family_ideal_samples(family);
  std::vector<std::vector<FaceSignature>> sig(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sig[i].reserve(pts[i].size());
    for (const auto& p : pts[i]) sig[i].push_back(dom.face_of(p).signature);
  }
  return sig;
}

inline int membership_of(const FaceSignature& s,
                         const std::vector<std::vector<FaceSignature>>& fam_sig) {
  for (std::size_t j = 0; j < fam_sig.size(); ++j)
    for (const auto& t : fam_sig[j])
      if (s.equal(t)) return static_cast<int>(j);
  return -1;
}

}  // namespace detail

struct BoundarySample {
  std::vector<HomogeneousPoint> points;
  std::vector<FaceSignature> signatures;
  std::vector<int> family_membership;  // first matching translate, -1 when none
};

inline BoundarySample make_boundary_sample(const ConvexDomain& dom, const PeripheralFamily& family,
                                           std::vector<HomogeneousPoint> points) {
  auto fam_sig = detail::family_ideal_signatures(dom, family);
  BoundarySample s;
  s.signatures.reserve(points.size());
  s.family_membership.reserve(points.size());
  for (const auto& p : points) {
    if (dom.classify(p) != Region::Boundary)
      fail(errc::not_ideal_point, "boundary sample point is not ideal");
    s.signatures.push_back(dom.face_of(p).signature);
    s.family_membership.push_back(detail::membership_of(s.signatures.back(), fam_sig));
  }
  s.points = std::move(points);
  return s;
}

// x ~ y iff the points share an open face, or both lie in the saturated
// ideal boundary of a single family translate.
inline bool equivalence_decide(const ConvexDomain& dom, const PeripheralFamily& family,
                               const HomogeneousPoint& x, const HomogeneousPoint& y) {
  BoundarySample s = make_boundary_sample(dom, family, {x, y});
  if (s.signatures[0].equal(s.signatures[1])) return true;
  return s.family_membership[0] >= 0 && s.family_membership[0] == s.family_membership[1];
}

struct QuotientComplex {
  std::vector<int> class_of;         // sample index -> class id
  int class_count = 0;
  std::vector<int> representatives;  // least sample index per class
  std::vector<PointClass> class_labels;
  std::vector<std::pair<int, int>> adjacency;  // classes with chart-close representatives
};

// Union-find closure of the equivalence over all sample pairs. Classes are
// numbered by least member index; adjacency edges are reporting-only and
// connect classes whose representatives sit within chart distance delta_adj.
inline QuotientComplex build_quotient(const BoundarySample& sample,
                                      const PeripheralFamily& family,
                                      double delta_adj = tol::adj) {
  int n = static_cast<int>(sample.points.size());
  if (n == 0) fail(errc::empty_sample, "quotient needs at least one sample point");
  const ConvexDomain& dom = family.gens.domain();

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool eq = sample.signatures[i].equal(sample.signatures[j]) ||
                (sample.family_membership[i] >= 0 &&
                 sample.family_membership[i] == sample.family_membership[j]);
      if (eq) parent[find(j)] = find(i);
    }

  QuotientComplex q;
  q.class_of.assign(n, -1);
  std::vector<int> number(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (number[r] < 0) {
      number[r] = q.class_count++;
      q.representatives.push_back(i);
    }
    q.class_of[i] = number[r];
  }
  q.class_labels.assign(q.class_count, PointClass::Unknown);
  for (int i = 0; i < n; ++i)
    if (sample.family_membership[i] >= 0) q.class_labels[q.class_of[i]] = PointClass::Peripheral;
  for (int c1 = 0; c1 < q.class_count; ++c1)
    for (int c2 = c1 + 1; c2 < q.class_count; ++c2) {
      Vec a = dom.chart_point(sample.points[q.representatives[c1]]);
      Vec b = dom.chart_point(sample.points[q.representatives[c2]]);
      if ((a - b).norm() < delta_adj) q.adjacency.emplace_back(c1, c2);
    }
  return q;
}

// Trichotomy for a single ideal point. Family membership wins outright;
// otherwise the point is conical when the ray [p0, x) recurs to the orbit of
// p0 within R_rec = 2 * (covering radius estimate of the enumerated orbit
// over probe points near p0), sampled on a 32-point grid to Hilbert depth 8.
// A shallow orbit cannot witness recurrence and yields Unknown.
inline PointClass classify_point(const ConvexDomain& dom, const GeneratorSet& gens,
                                 const PeripheralFamily& family, const HomogeneousPoint& x,
                                 const HomogeneousPoint& p0, int word_len = 6) {
  if (dom.classify(x) != Region::Boundary)
    fail(errc::not_ideal_point, "classification needs an ideal point");
  FaceSignature sx = dom.face_of(x).signature;
  if (detail::membership_of(sx, detail::family_ideal_signatures(dom, family)) >= 0)
    return PointClass::Peripheral;

  OrbitResult orbit = enumerate_orbit(gens, p0, word_len);
  std::vector<HomogeneousPoint> anchors;  // orbit points that kept chart margin
  for (const auto& g : orbit.orbit_points)
    if (dom.classify(g) == Region::Interior) anchors.push_back(g);

  Vec c0 = dom.chart_point(p0);
  auto place = [&](const Vec& u, double depth) -> std::optional<HomogeneousPoint> {
    auto iv = dom.clip_line(c0, u);
    if (!iv || !(iv->first < 0.0 && iv->second > 0.0)) return std::nullopt;
    double lam = (-iv->first / iv->second) * std::exp(2.0 * depth);
    double t = (iv->first + iv->second * lam) / (1.0 + lam);
    HomogeneousPoint p = dom.point_from_chart(Vec(c0 + t * u));
    if (dom.classify(p) != Region::Interior) return std::nullopt;
    return p;
  };
  auto min_orbit_dist = [&](const HomogeneousPoint& q) {
    double best = detail::kInf;
    for (const auto& g : anchors) best = std::min(best, hilbert_distance(dom, g, q));
    return best;
  };

  Rng rng(kDefaultSeed ^ 0x636f7665ull);
  double est = 0.0;
  for (int j = 0; j < 16; ++j) {
    Vec u = rng.unit_vector(dom.chart_dim());
    for (double depth : {1.0, 2.0, 3.0}) {
      auto probe = place(u, depth);
      if (!probe) continue;
      double d = min_orbit_dist(*probe);
      if (std::isfinite(d)) est = std::max(est, d);
    }
  }
  double r_rec = 2.0 * est;

  Vec dir = dom.chart_point(x) - c0;
  if (dir.norm() < 1e-14) fail(errc::numeric_failure, "ideal point coincides with the base");
  for (int k = 0; k < 32; ++k) {
    auto pt = place(dir, 8.0 * k / 31.0);
    if (!pt) return PointClass::Unknown;
    if (!(min_orbit_dist(*pt) <= r_rec)) return PointClass::Unknown;
  }
  return PointClass::Conical;
}

struct ConditionsReport {
  bool cond1_ok = true;
  bool cond2_ok = true;
  std::vector<std::pair<int, int>> cond1_witnesses;  // inequivalent boundary-segment sample pairs
  std::vector<std::pair<int, int>> cond2_witnesses;  // translate pairs with wide overlap
  double max_overlap_diameter = 0.0;
};

// Condition (1): sampled ideal pairs of C joined by a segment that stays on
// the boundary must be equivalent. Condition (2): for inequivalent sampled
// pairs the r-neighborhoods of their family hulls overlap in diameter < D.
// Pairs without family hulls are vacuous for (2): the neighborhood of a
// single ideal point contains no interior sample.
inline ConditionsReport check_conditions(const ConvexDomain& dom, const ConvexSubset& c,
                                         const PeripheralFamily& family, double r, double D) {
  std::vector<HomogeneousPoint> ideal;
  try {
    ideal = ideal_boundary_sample(c, 48);
  } catch (const error& e) {
    if (e.code() != errc::bounded_subset) throw;
  }
  if (ideal.size() < 2) fail(errc::too_few_samples, "condition checks need two ideal samples");
  BoundarySample sample = make_boundary_sample(dom, family, std::move(ideal));
  int n = static_cast<int>(sample.points.size());

  auto equivalent = [&](int i, int j) {
    return sample.signatures[i].equal(sample.signatures[j]) ||
           (sample.family_membership[i] >= 0 &&
            sample.family_membership[i] == sample.family_membership[j]);
  };
  auto boundary_segment = [&](const Vec& a, const Vec& b) {
    for (int k = 0; k <= 64; ++k) {
      Vec z = a + (k / 64.0) * (b - a);
      if (dom.classify(dom.point_from_chart(z)) != Region::Boundary) return false;
    }
    return true;
  };

  ConditionsReport rep;
  std::vector<std::pair<int, int>> hull_pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (equivalent(i, j)) continue;
      Vec ca = dom.chart_point(sample.points[i]);
      Vec cb = dom.chart_point(sample.points[j]);
      if (boundary_segment(ca, cb)) {
        rep.cond1_ok = false;
        rep.cond1_witnesses.emplace_back(i, j);
      }
      int mi = sample.family_membership[i], mj = sample.family_membership[j];
      if (mi >= 0 && mj >= 0 && mi != mj) {
        auto pr = std::minmax(mi, mj);
        std::pair<int, int> key{pr.first, pr.second};
        if (std::find(hull_pairs.begin(), hull_pairs.end(), key) == hull_pairs.end())
          hull_pairs.push_back(key);
      }
    }

  HomogeneousPoint p0 = dom.base_point();
  for (auto [mi, mj] : hull_pairs) {
    const ConvexSubset& xi = family.translates[mi];
    const ConvexSubset& xj = family.translates[mj];
    std::vector<HomogeneousPoint> kept;
    for (const auto& s : subset_window_samples(dom, xi, p0))
      if (distance_to_subset(dom, s, xj) < r) kept.push_back(s);
    for (const auto& s : subset_window_samples(dom, xj, p0))
      if (distance_to_subset(dom, s, xi) < r) kept.push_back(s);
    double diam = 0.0;
    for (std::size_t a = 0; a + 1 < kept.size(); ++a)
      for (std::size_t b = a + 1; b < kept.size(); ++b)
        diam = std::max(diam, hilbert_distance(dom, kept[a], kept[b]));
    rep.max_overlap_diameter = std::max(rep.max_overlap_diameter, diam);
    if (!(diam < D)) {
      rep.cond2_ok = false;
      rep.cond2_witnesses.emplace_back(mi, mj);
    }
  }
  return rep;
}

}  // namespace hilbert
