#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "advgrasp/quality.hpp"

namespace advgrasp {
namespace {

using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, 6>;
using DirectionMatrix = Eigen::Matrix<double, 6, Eigen::Dynamic>;

PointMatrix stack_points(std::span<const Wrench6> points) {
  PointMatrix p(static_cast<Eigen::Index>(points.size()), 6);
  for (std::size_t i = 0; i < points.size(); ++i) p.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  return p;
}

// Small explicit generator so direction sets are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }
  Wrench6 unit6() {
    Wrench6 v;
    do {
      for (int i = 0; i < 6; ++i) v(i) = gaussian();
    } while (v.norm() < 1e-12);
    return v.normalized();
  }

 private:
  std::uint64_t state_;
};

const DirectionMatrix& sample_directions(int count, std::uint64_t seed) {
  thread_local int cached_count = -1;
  thread_local std::uint64_t cached_seed = 0;
  thread_local DirectionMatrix cached;
  if (count != cached_count || seed != cached_seed) {
    SplitMix64 rng(seed);
    cached.resize(6, count);
    for (int j = 0; j < count; ++j) cached.col(j) = rng.unit6();
    cached_count = count;
    cached_seed = seed;
  }
  return cached;
}

double support(const PointMatrix& p, const Wrench6& u) { return (p * u).maxCoeff(); }

// Unit normal of the hyperplane through six points; false when they are
// affinely dependent.
bool hyperplane_normal(const PointMatrix& p, const std::array<int, 6>& idx, Wrench6& normal) {
  Eigen::Matrix<double, 6, 5> d;
  for (int k = 1; k < 6; ++k) d.col(k - 1) = (p.row(idx[k]) - p.row(idx[0])).transpose();
  Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 6, 5>> qr(d);
  qr.setThreshold(1e-10);
  if (qr.rank() < 5) return false;
  Eigen::Matrix<double, 6, 6> q = qr.householderQ();
  normal = q.col(5);
  return true;
}

// Tries the hyperplanes through every six of the most active points and
// keeps the normal with the lowest support value if it beats h.
bool snap_to_facet(const PointMatrix& p, Wrench6& u, double& h) {
  constexpr int kActive = 9;
  if (p.rows() < 6) return false;
  const int k = std::min<int>(kActive, static_cast<int>(p.rows()));
  const Eigen::VectorXd s = p * u;
  std::vector<int> order(static_cast<std::size_t>(p.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](int a, int b) { return s(a) > s(b) || (s(a) == s(b) && a < b); });

  bool improved = false;
  std::array<int, 6> pick{0, 1, 2, 3, 4, 5};
  while (true) {
    std::array<int, 6> idx{};
    for (int j = 0; j < 6; ++j) idx[j] = order[static_cast<std::size_t>(pick[j])];
    Wrench6 a;
    if (hyperplane_normal(p, idx, a)) {
      if (a.dot(u) < 0.0) a = -a;
      const double ha = support(p, a);
      if (ha < h) {
        u = a;
        h = ha;
        improved = true;
      }
    }
    // Next 6-combination of [0, k) in lexicographic order.
    int j = 5;
    while (j >= 0 && pick[j] == k - 6 + j) --j;
    if (j < 0) break;
    ++pick[j];
    for (int m = j + 1; m < 6; ++m) pick[m] = pick[m - 1] + 1;
  }
  return improved;
}

// Pattern search on the sphere: coordinate moves plus a few seeded random
// ones, renormalized; the step halves when nothing improves.
void descend(const PointMatrix& p, Wrench6& u, double& h, int steps, double step,
             SplitMix64& rng) {
  for (int it = 0; it < steps && step > 1e-12; ++it) {
    Wrench6 best_u = u;
    double best_h = h;
    auto try_move = [&](const Wrench6& dir) {
      const Wrench6 cand = (u + step * dir).normalized();
      const double hc = support(p, cand);
      if (hc < best_h) {
        best_h = hc;
        best_u = cand;
      }
    };
    for (int axis = 0; axis < 6; ++axis) {
      Wrench6 e = Wrench6::Zero();
      e(axis) = 1.0;
      try_move(e);
      try_move(-e);
    }
    for (int r = 0; r < 6; ++r) {
      const Wrench6 dir = rng.unit6();
      try_move(dir);
      try_move(-dir);
    }
    if (best_h < h) {
      u = best_u;
      h = best_h;
    } else {
      step *= 0.5;
    }
  }
}

// Indices of constraints active at v (slack below tol), reduced to a
// linearly independent set.
std::vector<int> independent_active(const PointMatrix& p, const Wrench6& v, double tol) {
  const Eigen::VectorXd slack = 1.0 - (p * v).array();
  std::vector<int> order;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (slack(i) <= tol) order.push_back(static_cast<int>(i));
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return slack(a) < slack(b); });
  std::vector<int> active;
  Eigen::Matrix<double, Eigen::Dynamic, 6> rows(0, 6);
  for (int i : order) {
    Eigen::Matrix<double, Eigen::Dynamic, 6> trial(rows.rows() + 1, 6);
    trial << rows, p.row(i);
    Eigen::FullPivLU<Eigen::Matrix<double, Eigen::Dynamic, 6>> lu(trial);
    lu.setThreshold(1e-10);
    if (lu.rank() == trial.rows()) {
      rows = trial;
      active.push_back(i);
      if (active.size() == 6) break;
    }
  }
  return active;
}

// Largest step t >= 0 along d keeping p v <= 1; -1 when d never leaves.
double ratio_test(const PointMatrix& p, const Wrench6& v, const Wrench6& d,
                  const std::vector<int>& active, int& hit) {
  const Eigen::VectorXd pv = p * v;
  const Eigen::VectorXd pd = p * d;
  double best = -1.0;
  hit = -1;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (pd(i) <= 1e-12 * d.norm()) continue;
    if (std::find(active.begin(), active.end(), static_cast<int>(i)) != active.end()) continue;
    const double t = std::max(0.0, 1.0 - pv(i)) / pd(i);
    if (hit < 0 || t < best) {
      best = t;
      hit = static_cast<int>(i);
    }
  }
  return best;
}

// With the origin interior, the margin is 1 / max |v| over the polar
// polytope {v : p v <= 1}, and the maximum sits at a vertex. Starting from
// u / h, first push outward to a vertex, then climb to the adjacent vertex
// of largest norm until none is larger. Only ever lowers h.
bool polar_ascent(const PointMatrix& p, Wrench6& u, double& h) {
  if (!(h > 0.0) || p.rows() < 7) return false;
  constexpr double kActiveTol = 1e-10;
  Wrench6 v = u / h;

  std::vector<int> active = independent_active(p, v, kActiveTol);
  for (int guard = 0; guard < 12 && active.size() < 6; ++guard) {
    Eigen::Matrix<double, 6, Eigen::Dynamic> a(6, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) {
      a.col(static_cast<Eigen::Index>(k)) = p.row(active[k]).transpose();
    }
    Eigen::HouseholderQR<Eigen::Matrix<double, 6, Eigen::Dynamic>> qr(a);
    const Eigen::Matrix<double, 6, 6> q = qr.householderQ();
    const auto null = q.rightCols(6 - static_cast<Eigen::Index>(active.size()));
    Wrench6 d = null * (null.transpose() * v);
    if (d.norm() < 1e-12 * v.norm()) d = null.col(0);
    if (d.dot(v) < 0.0) d = -d;
    int hit = -1;
    const double t = ratio_test(p, v, d, active, hit);
    if (hit < 0) return false;  // unbounded polar: origin on the hull boundary
    v += t * d;
    active = independent_active(p, v, kActiveTol);
  }
  if (active.size() < 6) return false;

  for (int it = 0; it < 500; ++it) {
    Eigen::Matrix<double, 6, 6> w;
    for (int k = 0; k < 6; ++k) w.row(k) = p.row(active[static_cast<std::size_t>(k)]);
    Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(w);
    if (!lu.isInvertible()) break;
    const Eigen::Matrix<double, 6, 6> inv = lu.inverse();
    double best_norm = v.squaredNorm() * (1.0 + 1e-12);
    Wrench6 best_v = v;
    int leave = -1;
    int enter = -1;
    for (int j = 0; j < 6; ++j) {
      const Wrench6 d = -inv.col(j);
      int hit = -1;
      const double t = ratio_test(p, v, d, active, hit);
      if (hit < 0) continue;
      const Wrench6 cand = v + t * d;
      if (cand.squaredNorm() > best_norm) {
        best_norm = cand.squaredNorm();
        best_v = cand;
        leave = j;
        enter = hit;
      }
    }
    if (leave < 0) break;
    v = best_v;
    active[static_cast<std::size_t>(leave)] = enter;
  }

  const Wrench6 cand = v.normalized();
  const double hc = support(p, cand);
  if (hc < h) {
    u = cand;
    h = hc;
    return true;
  }
  return false;
}

StabilityMargin make_margin(double signed_margin, MarginMethod method, bool degenerate = false) {
  return {signed_margin, std::max(signed_margin, 0.0), method, degenerate};
}

}  // namespace

StabilityMargin signed_hull_margin(const WrenchPrimitiveSet& set, const MarginOptions& options) {
  if (set.primitives.empty()) throw std::invalid_argument("signed_hull_margin: no primitives");
  if (options.directions < 1) throw std::invalid_argument("signed_hull_margin: directions < 1");
  // Outside the hull the minimum is minus the distance, computed exactly.
  const PointMatrix p = stack_points(set.primitives);
  const double radius = std::sqrt(p.rowwise().squaredNorm().maxCoeff());
  const double outside = distance_to_hull(set.primitives);
  if (outside > 1e-9 * radius) return make_margin(-outside, MarginMethod::Sampled);

  const DirectionMatrix& dirs = sample_directions(options.directions, options.seed);

  const Eigen::RowVectorXd h_all = (p * dirs).colwise().maxCoeff();
  std::vector<int> order(static_cast<std::size_t>(dirs.cols()));
  std::iota(order.begin(), order.end(), 0);
  const int starts = std::clamp(options.refine_starts, 1, static_cast<int>(order.size()));
  const int walks = std::clamp(std::max(options.vertex_starts, starts), 1,
                               static_cast<int>(order.size()));
  std::partial_sort(order.begin(), order.begin() + walks, order.end(), [&](int a, int b) {
    return h_all(a) < h_all(b) || (h_all(a) == h_all(b) && a < b);
  });

  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < walks; ++s) {
    Wrench6 u = dirs.col(order[s]);
    double h = h_all(order[s]);
    if (s < starts) {
      SplitMix64 rng(options.seed ^ (0xa5a5a5a5ULL + static_cast<std::uint64_t>(s)));
      descend(p, u, h, options.refine_steps, 0.3, rng);
      for (int round = 0; round < 3 && snap_to_facet(p, u, h); ++round) {
        descend(p, u, h, options.refine_steps / 4, 0.05, rng);
      }
    }
    polar_ascent(p, u, h);
    best = std::min(best, h);
  }
  return make_margin(best, MarginMethod::Sampled);
}

double distance_to_hull(std::span<const Wrench6> points) {
  if (points.empty()) throw std::invalid_argument("distance_to_hull: no points");
  const PointMatrix p = stack_points(points);
  const auto n = p.rows();
  const double scale = std::max(p.rowwise().squaredNorm().maxCoeff(), 1e-300);
  const double tol = 1e-12;

  // Wolfe's minimum-norm-point algorithm over the corral S with convex weights.
  Eigen::Index start = 0;
  p.rowwise().squaredNorm().minCoeff(&start);
  std::vector<Eigen::Index> corral{start};
  std::vector<double> weight{1.0};
  Wrench6 x = p.row(start).transpose();

  for (int major = 0; major < 10 * static_cast<int>(n) + 100; ++major) {
    Eigen::Index j = 0;
    (p * x).minCoeff(&j);
    if (x.squaredNorm() - p.row(j).dot(x) <= tol * scale) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    weight.push_back(0.0);

    while (true) {
      const auto k = static_cast<Eigen::Index>(corral.size());
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) m(a, b) = p.row(corral[a]).dot(p.row(corral[b]));
        m(a, k) = 1.0;
        m(k, a) = 1.0;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs(k) = 1.0;
      const Eigen::VectorXd sol = m.completeOrthogonalDecomposition().solve(rhs);
      const Eigen::VectorXd mu = sol.head(k);
      if ((mu.array() > tol).all()) {
        for (Eigen::Index a = 0; a < k; ++a) weight[a] = mu(a);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index a = 0; a < k; ++a) {
        if (mu(a) <= tol) theta = std::min(theta, weight[a] / (weight[a] - mu(a)));
      }
      for (Eigen::Index a = 0; a < k; ++a) weight[a] = (1.0 - theta) * weight[a] + theta * mu(a);
      std::vector<Eigen::Index> kept;
      std::vector<double> kept_w;
      for (Eigen::Index a = 0; a < k; ++a) {
        if (weight[a] > tol) {
          kept.push_back(corral[a]);
          kept_w.push_back(weight[a]);
        }
      }
      if (kept.size() == corral.size()) {
        // No weight reached zero numerically; drop the smallest to make progress.
        const auto smallest = std::min_element(kept_w.begin(), kept_w.end()) - kept_w.begin();
        kept.erase(kept.begin() + smallest);
        kept_w.erase(kept_w.begin() + smallest);
      }
      corral = std::move(kept);
      weight = std::move(kept_w);
      const double sum = std::accumulate(weight.begin(), weight.end(), 0.0);
      for (double& w : weight) w /= sum;
    }
    x.setZero();
    for (std::size_t a = 0; a < corral.size(); ++a) x += weight[a] * p.row(corral[a]).transpose();
  }
  return x.norm();
}

StabilityMargin exact_hull_margin(const WrenchPrimitiveSet& set) {
  const auto n = static_cast<int>(set.primitives.size());
  if (n < 1) throw std::invalid_argument("exact_hull_margin: no primitives");
  if (n > 40) throw std::invalid_argument("exact_hull_margin: more than 40 primitives");
  const PointMatrix p = stack_points(set.primitives);
  const double tol = 1e-9 * std::max(1.0, std::sqrt(p.rowwise().squaredNorm().maxCoeff()));

  bool any_facet = false;
  bool flat = n < 7;
  double min_offset = std::numeric_limits<double>::infinity();

  std::array<int, 6> idx{0, 1, 2, 3, 4, 5};
  while (!flat && n >= 6) {
    Wrench6 a;
    if (hyperplane_normal(p, idx, a)) {
      const double b = p.row(idx[0]).dot(a);
      const Eigen::VectorXd side = (p * a).array() - b;
      const double hi = side.maxCoeff();
      const double lo = side.minCoeff();
      if (hi <= tol && lo >= -tol) {
        flat = true;  // every point on one hyperplane
      } else if (hi <= tol) {
        any_facet = true;
        min_offset = std::min(min_offset, b);
      } else if (lo >= -tol) {
        any_facet = true;
        min_offset = std::min(min_offset, -b);
      }
    }
    // Next 6-combination in lexicographic order.
    int k = 5;
    while (k >= 0 && idx[k] == n - 6 + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int r = k + 1; r < 6; ++r) idx[r] = idx[r - 1] + 1;
  }

  if (flat || !any_facet) {
    return make_margin(-distance_to_hull(set.primitives), MarginMethod::Exact, true);
  }
  if (min_offset > 0.0) return make_margin(min_offset, MarginMethod::Exact);
  return make_margin(-distance_to_hull(set.primitives), MarginMethod::Exact);
}

WrenchPrimitiveSet grasp_primitives(const GraspScene& scene, const FrictionParams& friction) {
  if (!(scene.radius > 0.0)) throw std::invalid_argument("grasp_primitives: zero object radius");
  WrenchPrimitiveSet set;
  set.origin = scene.centroid;
  set.torque_scale = 1.0 / scene.radius;
  for (const ContactFrame& c : scene.contacts) {
    auto prims = contact_primitives(c.position, c.inward_normal, scene.centroid, friction,
                                    set.torque_scale);
    set.primitives.insert(set.primitives.end(), prims.begin(), prims.end());
  }
  return set;
}

StabilityMargin grasp_stability(const GraspScene& scene, const GraspConfig& grasp,
                                const StabilityOptions& options) {
  const WrenchPrimitiveSet set = grasp_primitives(scene, grasp.friction);
  if (options.exact && set.primitives.size() <= 40) return exact_hull_margin(set);
  return signed_hull_margin(set, options.sampling);
}

StabilityMargin grasp_stability(const TriangleMesh& mesh, const GraspConfig& grasp,
                                const StabilityOptions& options) {
  return grasp_stability(assemble_scene(mesh, grasp), grasp, options);
}

}  // namespace advgrasp
