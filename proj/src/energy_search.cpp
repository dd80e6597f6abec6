// Weak-energy-conserving QMI search for two qubits.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "orbit/extremize.hpp"

namespace orbit {
namespace {

using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;

constexpr std::array<double, 4> kLevels{0.0, 1.0, 1.0, 2.0};
constexpr double kProjectionTol = 1e-12;
constexpr int kNewtonIterations = 60;
constexpr int kProjectionAttempts = 4;
constexpr int kPlacementAttempts = 64;
constexpr int kGenerators = 16;
constexpr double kInitialStep = 0.4;
constexpr double kMinStep = 1e-7;

double energy_of(const Mat4& s) {
  return s(1, 1).real() + s(2, 2).real() + 2.0 * s(3, 3).real();
}

double neg_xlog2x(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double entropy_2x2(const Mat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double off = std::abs(m(0, 1));
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * off * off);
  const double tr = a + d;
  const double hi = std::clamp(0.5 * (tr + disc), 0.0, 1.0);
  const double lo = std::clamp(0.5 * (tr - disc), 0.0, 1.0);
  return neg_xlog2x(hi) + neg_xlog2x(lo);
}

// S(A) + S(B) - S; the joint entropy is fixed on the orbit.
double fast_qmi(const Mat4& s, double joint_entropy) {
  Mat2 a;
  a(0, 0) = s(0, 0) + s(1, 1);
  a(0, 1) = s(0, 2) + s(1, 3);
  a(1, 0) = std::conj(a(0, 1));
  a(1, 1) = s(2, 2) + s(3, 3);
  Mat2 b;
  b(0, 0) = s(0, 0) + s(2, 2);
  b(0, 1) = s(0, 1) + s(2, 3);
  b(1, 0) = std::conj(b(0, 1));
  b(1, 1) = s(1, 1) + s(3, 3);
  return entropy_2x2(a) + entropy_2x2(b) - joint_entropy;
}

// exp(i t B_k) for the k-th element of a Hermitian basis of 4x4 matrices: four diagonal
// phases, then for each pair p < q the real-symmetric and imaginary-antisymmetric generators.
Mat4 elementary_rotation(int k, double t) {
  Mat4 r = Mat4::Identity();
  if (k < 4) {
    r(k, k) = std::polar(1.0, t);
    return r;
  }
  static constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  const int pair = (k - 4) / 2;
  const bool symmetric = (k - 4) % 2 == 0;
  const auto [p, q] = kPairs[static_cast<std::size_t>(pair)];
  const double c = std::cos(t);
  const double s = std::sin(t);
  r(p, p) = c;
  r(q, q) = c;
  if (symmetric) {
    r(p, q) = Complex(0.0, s);
    r(q, p) = Complex(0.0, s);
  } else {
    r(p, q) = s;
    r(q, p) = -s;
  }
  return r;
}

Mat4 random_hermitian(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(g(rng), g(rng));
  return (0.5 * (m + m.adjoint())).eval();
}

// Walks sigma along exp(-i t G) sigma exp(i t G) until its energy is `target`. G defaults to
// i[H, sigma], the steepest energy direction; random generators are tried if that stalls.
std::optional<Mat4> project_energy(const Mat4& sigma, double target, Rng& rng,
                                   int attempts = kProjectionAttempts) {
  if (std::abs(energy_of(sigma) - target) < kProjectionTol) return sigma;

  Mat4 h = Mat4::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = kLevels[static_cast<std::size_t>(i)];

  for (int attempt = 0; attempt < attempts; ++attempt) {
    Mat4 gen;
    if (attempt == 0) {
      const Mat4 comm = h * sigma - sigma * h;
      if (comm.cwiseAbs().maxCoeff() < 1e-9) continue;
      gen = Complex(0.0, 1.0) * comm;
    } else {
      gen = random_hermitian(rng);
    }
    Eigen::SelfAdjointEigenSolver<Mat4> eig(gen);
    const Mat4& v = eig.eigenvectors();
    const Eigen::Vector4d g = eig.eigenvalues();
    const Mat4 st = v.adjoint() * sigma * v;
    const Mat4 ht = v.adjoint() * h * v;

    // E(t) = Re sum_ab st_ab ht_ba exp(-i t (g_a - g_b)).
    auto energy_and_slope = [&](double t) {
      double e = 0.0;
      double de = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double w = g(a) - g(b);
          const Complex term = st(a, b) * ht(b, a) * std::polar(1.0, -t * w);
          e += term.real();
          de += (Complex(0.0, -w) * term).real();
        }
      return std::pair{e, de};
    };

    // A random curve through a stationary point (e.g. a diagonal state) has zero slope at 0.
    double t = attempt == 0 ? 0.0 : std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
    for (int it = 0; it < kNewtonIterations; ++it) {
      const auto [e, de] = energy_and_slope(t);
      const double miss = e - target;
      if (std::abs(miss) < kProjectionTol) {
        Mat4 w = Mat4::Zero();
        for (int a = 0; a < 4; ++a) w(a, a) = std::polar(1.0, -t * g(a));
        const Mat4 rot = v * w * v.adjoint();
        Mat4 out = rot * sigma * rot.adjoint();
        out = (0.5 * (out + out.adjoint())).eval();
        if (std::abs(energy_of(out) - target) < 1e-10) return out;
        break;
      }
      if (std::abs(de) < 1e-14) break;
      t -= std::clamp(miss / de, -0.5, 0.5);
    }
  }
  return std::nullopt;
}

struct Walker {
  Mat4 sigma;
  double score = std::numeric_limits<double>::infinity();
  double step = kInitialStep;
  bool converged = false;
};

class Search {
 public:
  Search(double target, double joint_entropy, Direction direction, std::uint64_t seed)
      : target_(target), joint_entropy_(joint_entropy), sign_(direction == Direction::minimize ? 1.0 : -1.0),
        rng_(seed) {}

  double score(const Mat4& s) const { return sign_ * fast_qmi(s, joint_entropy_); }

  std::optional<Mat4> project(const Mat4& s) { return project_energy(s, target_, rng_); }

  Rng& rng() { return rng_; }
  int evaluations() const { return evaluations_; }

  // Coordinate descent until `limit` total evaluations or the step collapses.
  void advance(Walker& w, int limit) {
    while (!w.converged && evaluations_ < limit) {
      bool improved = false;
      for (int k = 0; k < kGenerators && evaluations_ < limit; ++k) {
        for (double dir : {1.0, -1.0}) {
          if (evaluations_ >= limit) break;
          const Mat4 r = elementary_rotation(k, dir * w.step);
          ++evaluations_;
          const auto trial = project(r * w.sigma * r.adjoint());
          if (!trial) continue;
          const double sc = score(*trial);
          if (sc < w.score - 1e-15) {
            w.sigma = *trial;
            w.score = sc;
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        w.step *= 0.5;
        if (w.step < kMinStep) w.converged = true;
      }
    }
  }

 private:
  double target_;
  double joint_entropy_;
  double sign_;
  Rng rng_;
  int evaluations_ = 0;
};

Mat4 to_mat4(const Matrix& m) { return Mat4(m); }

}  // namespace

DensityMatrix with_two_qubit_energy(const DensityMatrix& rho, double target, Rng& rng) {
  if (rho.dims().d_a != 2 || rho.dims().d_b != 2) throw Error(ErrorKind::WrongDimension, "expected a 2x2 state");
  const Spectrum spectrum = spectrum_of(rho);
  const auto [lo, hi] = energy_window(spectrum);
  if (target < lo - 1e-12 || target > hi + 1e-12) {
    throw Error(ErrorKind::InfeasibleEnergy, "energy " + std::to_string(target) + " is outside the orbit window");
  }
  if (const auto out = project_energy(to_mat4(rho.matrix()), target, rng, kPlacementAttempts)) {
    return DensityMatrix(Matrix(*out), rho.dims());
  }
  // Diagonal state l2, l3 on |01>, |10>; l1 and l4 share the |00>, |11> plane at an angle that
  // sweeps the whole window: E = l2 + l3 + 2 (l1 sin^2 + l4 cos^2).
  const double l1 = spectrum[0], l2 = spectrum[1], l3 = spectrum[2], l4 = spectrum[3];
  const double sin2 = l1 > l4 ? std::clamp((target - lo) / (2.0 * (l1 - l4)), 0.0, 1.0) : 0.0;
  const double c = std::sqrt(1.0 - sin2);
  const double sn = std::sqrt(sin2);
  Mat4 out = Mat4::Zero();
  out(0, 0) = l1 * c * c + l4 * sn * sn;
  out(3, 3) = l1 * sn * sn + l4 * c * c;
  out(0, 3) = out(3, 0) = (l1 - l4) * c * sn;
  out(1, 1) = l2;
  out(2, 2) = l3;
  return DensityMatrix(Matrix(out), rho.dims());
}

WeakEnergyResult optimize_qmi_weak_energy(const DensityMatrix& rho, double energy, Direction direction,
                                          const WeakEnergyOptions& options) {
  if (!rho.is_bipartite() || rho.dims().d_a != 2 || rho.dims().d_b != 2) {
    throw Error(ErrorKind::WrongDimension, "weak-energy search needs a 2x2 state");
  }
  const double e0 = two_qubit_energy(rho);
  if (std::abs(e0 - energy) > 1e-8) {
    throw Error(ErrorKind::EnergyMismatch,
                "state energy " + std::to_string(e0) + " differs from " + std::to_string(energy));
  }
  const Spectrum spectrum = spectrum_of(rho);
  Search search(energy, shannon_entropy(spectrum.values()), direction, options.seed);

  const int restarts = std::max(1, options.restarts);
  const int budget = std::max(1, options.budget);
  const int explore = std::max(1, budget / (2 * restarts));

  Walker best;
  best.sigma = to_mat4(rho.matrix());
  best.score = search.score(best.sigma);

  std::vector<Walker> walkers;
  walkers.reserve(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts && search.evaluations() < budget; ++r) {
    Walker w;
    if (r == 0) {
      w.sigma = to_mat4(rho.matrix());
    } else {
      const Mat4 u = to_mat4(haar_unitary(4, search.rng()));
      const auto start = search.project(u * to_mat4(rho.matrix()) * u.adjoint());
      if (!start) continue;
      w.sigma = *start;
    }
    w.score = search.score(w.sigma);
    search.advance(w, std::min(budget, search.evaluations() + explore));
    walkers.push_back(w);
  }
  if (!walkers.empty()) {
    auto it = std::min_element(walkers.begin(), walkers.end(),
                               [](const Walker& a, const Walker& b) { return a.score < b.score; });
    search.advance(*it, budget);
    if (it->score < best.score) best = *it;
  }

  DensityMatrix state(Matrix(best.sigma), rho.dims());
  return WeakEnergyResult{mutual_information(state), state, std::abs(energy_of(best.sigma) - energy),
                          search.evaluations()};
}

}  // namespace orbit
