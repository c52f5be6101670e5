#pragma once

// Shared infrastructure: fixed-capacity linear algebra aliases (ambient
// dimension is capped at 8), error codes, tolerance defaults, a
// deterministic RNG, and a small fork-join loop helper.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hilbert {

inline constexpr int kMaxDim = 8;

// Stack-allocated dynamic vectors/matrices; geometry never exceeds kMaxDim.
// Quantities sized by point or sample counts (hull weights, point
// collections, pairwise tables) are unbounded and use the heap-backed
// VecX/MatX instead.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

enum class errc {
  invalid_argument,
  numeric_failure,
  // projective core
  not_collinear,
  degenerate_configuration,
  not_converged,
  kernel_point,
  outside_chart,
  // domains
  outside_point,
  segment_outside,
  coincident_points,
  bounded_subset,
  not_a_subset,
  dependent_vertices,
  not_interior,
  bad_signature,
  // metric
  empty_subset,
  empty_set,
  not_in_relative_interior,
  face_mismatch,
  not_converging,
  // dynamics
  domain_not_preserved,
  not_proximal,
  axis_misses_domain,
  relation_violated,
  ping_pong_fails,
  empty_limit_set,
  // peripheral / quotient
  too_few_translates,
  not_properly_embedded,
  projection_escapes,
  not_ideal_point,
  empty_sample,
  too_few_samples,
  // io
  parse_error,
  validation_error,
  unknown_command,
  unsupported_plot_dimension,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::numeric_failure: return "NumericFailure";
    case errc::not_collinear: return "NotCollinear";
    case errc::degenerate_configuration: return "DegenerateConfiguration";
    case errc::not_converged: return "NotConverged";
    case errc::kernel_point: return "KernelPoint";
    case errc::outside_chart: return "OutsideChart";
    case errc::outside_point: return "OutsidePoint";
    case errc::segment_outside: return "SegmentOutside";
    case errc::coincident_points: return "CoincidentPoints";
    case errc::bounded_subset: return "BoundedSubset";
    case errc::not_a_subset: return "NotASubset";
    case errc::dependent_vertices: return "DependentVertices";
    case errc::not_interior: return "NotInterior";
    case errc::bad_signature: return "BadSignature";
    case errc::empty_subset: return "EmptySubset";
    case errc::empty_set: return "EmptySet";
    case errc::not_in_relative_interior: return "NotInRelativeInterior";
    case errc::face_mismatch: return "FaceMismatch";
    case errc::not_converging: return "NotConverging";
    case errc::domain_not_preserved: return "DomainNotPreserved";
    case errc::not_proximal: return "NotProximal";
    case errc::axis_misses_domain: return "AxisMissesDomain";
    case errc::relation_violated: return "RelationViolated";
    case errc::ping_pong_fails: return "PingPongFails";
    case errc::empty_limit_set: return "EmptyLimitSet";
    case errc::too_few_translates: return "TooFewTranslates";
    case errc::not_properly_embedded: return "NotProperlyEmbedded";
    case errc::projection_escapes: return "ProjectionEscapes";
    case errc::not_ideal_point: return "NotIdealPoint";
    case errc::empty_sample: return "EmptySample";
    case errc::too_few_samples: return "TooFewSamples";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::unknown_command: return "UnknownCommand";
    case errc::unsupported_plot_dimension: return "UnsupportedPlotDimension";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// Pinned tolerances. Algebraic/convergence values are type-level constants;
// the geometric/sampling ones can be overridden per call where it matters.
namespace tol {
inline constexpr double alg = 1e-9;           // relative algebraic comparisons
inline constexpr double conv = 1e-10;         // Cauchy tail threshold for map limits
inline constexpr double geo = 1e-7;           // geometric membership in chart units
inline constexpr double opt = 1e-6;           // minimizer certification
inline constexpr double samp = 5e-3;          // sampled Hausdorff slack
inline constexpr double prox = 1e-6;          // proximality eigenvalue gap margin
inline constexpr double acc = 1e-4;           // orbit accumulation boundary band
inline constexpr double adj = 1e-2;           // quotient class adjacency resolution
inline constexpr double rank = 1e-8;          // singular value rank cutoff
inline constexpr double chart_margin = 1e-6;  // closure-inside-chart margin
inline constexpr double collinear = 1e-8;     // sigma3/sigma1 collinearity cutoff
inline constexpr double dedup = 1e-6;         // point dedup resolution
inline constexpr double grid = 1e-8;          // group element dedup resolution
inline constexpr double window = 6.0;         // Hilbert sampling window radius
}  // namespace tol

// Deterministic RNG: mt19937_64 with explicit bit-to-double mapping so
// sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

  double gauss() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Vec unit_vector(int d) {
    Vec v(d);
    double n = 0;
    do {
      for (int i = 0; i < d; ++i) v[i] = gauss();
      n = v.norm();
    } while (n < 1e-12);
    return v / n;
  }

  // Uniform-ish weights on the probability simplex (exponential spacings).
  // Heap-backed: k counts hull generators, which kMaxDim does not bound.
  VecX dirichlet(int k) {
    VecX w(k);
    double s = 0;
    for (int i = 0; i < k; ++i) {
      double u = uniform();
      while (u <= 1e-300) u = uniform();
      w[i] = -std::log(u);
      s += w[i];
    }
    return w / s;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x48494C42ull;  // default sampling seed

inline int worker_count() {
  static int n = [] {
    if (const char* env = std::getenv("HILBERT_LAB_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return std::min(v, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
  }();
  return n;
}

// Deterministic fork-join: the index range is split into one contiguous shard
// per worker. Writers own disjoint indices; reductions over results must be
// order-exact (min/max/collect), which keeps outputs schedule independent.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  int workers = worker_count();
  if (workers <= 1 || n < 256) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = std::min(n, w * chunk), hi = std::min(n, (w + 1) * chunk);
    if (lo >= hi) break;
    pool.emplace_back(body, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace hilbert
