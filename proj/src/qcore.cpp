#include "orbit/qcore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "orbit/kernels.hpp"

namespace orbit {
namespace {

constexpr double kDistributionSumTol = 1e-10;
constexpr double kDistributionNegTol = 1e-12;

void require_distribution(std::span<const double> p, const char* what) {
  if (p.empty()) throw Error(ErrorKind::NotADistribution, std::string(what) + " is empty");
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < -kDistributionNegTol) {
      throw Error(ErrorKind::NotADistribution, std::string(what) + " has entry " + std::to_string(v));
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kDistributionSumTol) {
    throw Error(ErrorKind::NotADistribution,
                std::string(what) + " sums to " + std::to_string(total) + ", not 1");
  }
}

std::vector<double> sorted_descending(std::span<const double> p) {
  std::vector<double> out(p.begin(), p.end());
  for (double& v : out) v = std::max(v, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double convert(double bits, EntropyUnit unit) {
  return unit == EntropyUnit::bits ? bits : bits_to_nats(bits);
}

}  // namespace

BipartiteDims::BipartiteDims(int a, int b) : d_a(a), d_b(b) {
  if (a < 2 || b < 2) {
    throw Error(ErrorKind::InvalidDims,
                "subsystem dimensions must be >= 2, got " + std::to_string(a) + "x" + std::to_string(b));
  }
  if (a * b > kMaxTotalDim) {
    throw Error(ErrorKind::InvalidDims, "d_a * d_b must be <= 64, got " + std::to_string(a * b));
  }
}

BipartiteDims BipartiteDims::parse(std::string_view text) {
  const auto x = text.find_first_of("xX");
  int a = 0;
  int b = 0;
  if (x == std::string_view::npos) throw Error(ErrorKind::ParseError, "dims must look like AxB");
  const auto ra = std::from_chars(text.data(), text.data() + x, a);
  const auto rb = std::from_chars(text.data() + x + 1, text.data() + text.size(), b);
  if (ra.ec != std::errc{} || ra.ptr != text.data() + x || rb.ec != std::errc{} ||
      rb.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, "dims must look like AxB, got '" + std::string(text) + "'");
  }
  return BipartiteDims(a, b);
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::NotADistribution, "spectrum is empty");
  double total = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::NotADistribution, "spectrum entry " + std::to_string(v) + " outside [0, 1]");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kSpectrumSumTol) {
    throw Error(ErrorKind::NotADistribution, "spectrum sums to " + std::to_string(total));
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

Spectrum Spectrum::normalized(std::vector<double> values) {
  for (double& v : values) {
    if (v < 0.0 && v >= -kStateTol) v = 0.0;
  }
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::NotADistribution, "spectrum has no mass");
  for (double& v : values) v = std::min(v / total, 1.0);
  return Spectrum(std::move(values));
}

std::size_t Spectrum::rank(double cutoff) const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [cutoff](double v) { return v > cutoff; }));
}

DensityMatrix::DensityMatrix(Matrix entries, std::optional<BipartiteDims> dims)
    : entries_(std::move(entries)), dims_(dims) {
  const auto n = entries_.rows();
  if (n == 0 || entries_.cols() != n) throw Error(ErrorKind::NotAState, "matrix must be square and non-empty");
  if (dims_ && dims_->total() != n) {
    throw Error(ErrorKind::DimensionMismatch, "dims " + std::to_string(dims_->d_a) + "x" +
                                                  std::to_string(dims_->d_b) + " do not match size " +
                                                  std::to_string(n));
  }
  if (!entries_.allFinite()) throw Error(ErrorKind::NotAState, "matrix has non-finite entries");

  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kStateTol) throw Error(ErrorKind::NotAState, "not Hermitian (deviation " + std::to_string(herm) + ")");
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();

  const Complex tr = entries_.trace();
  if (std::abs(tr.real() - 1.0) > kStateTol || std::abs(tr.imag()) > kStateTol) {
    throw Error(ErrorKind::NotAState, "trace is " + std::to_string(tr.real()) + ", not 1");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  if (ev.minCoeff() < -kStateTol) {
    throw Error(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(ev.minCoeff()));
  }
  eigenvalues_.assign(ev.data(), ev.data() + ev.size());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations, std::optional<BipartiteDims> dims) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(populations.size()),
                          static_cast<Eigen::Index>(populations.size()));
  for (std::size_t i = 0; i < populations.size(); ++i) m(i, i) = populations[i];
  return DensityMatrix(std::move(m), dims);
}

const BipartiteDims& DensityMatrix::dims() const {
  if (!dims_) throw Error(ErrorKind::DimensionMismatch, "state carries no bipartite dimensions");
  return *dims_;
}

Spectrum spectrum_of(const DensityMatrix& rho) {
  std::vector<double> values(rho.raw_eigenvalues().begin(), rho.raw_eigenvalues().end());
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  return Spectrum::normalized(std::move(values));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  const auto& dims = rho.dims();
  const Matrix& m = rho.matrix();
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dims.d_a, dims.d_a);
    for (int j = 0; j < dims.d_a; ++j)
      for (int jp = 0; jp < dims.d_a; ++jp)
        for (int k = 0; k < dims.d_b; ++k) out(j, jp) += m(j * dims.d_b + k, jp * dims.d_b + k);
    return DensityMatrix(std::move(out));
  }
  Matrix out = Matrix::Zero(dims.d_b, dims.d_b);
  for (int k = 0; k < dims.d_b; ++k)
    for (int kp = 0; kp < dims.d_b; ++kp)
      for (int j = 0; j < dims.d_a; ++j) out(k, kp) += m(j * dims.d_b + k, j * dims.d_b + kp);
  return DensityMatrix(std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const int da = a.size();
  const int db = b.size();
  Matrix out(da * db, da * db);
  for (int j = 0; j < da; ++j)
    for (int jp = 0; jp < da; ++jp)
      out.block(j * db, jp * db, db, db) = a.matrix()(j, jp) * b.matrix();
  return DensityMatrix(std::move(out), BipartiteDims(da, db));
}

DensityMatrix evolve(const DensityMatrix& rho, const Matrix& unitary) {
  if (unitary.rows() != rho.size() || unitary.cols() != rho.size()) {
    throw Error(ErrorKind::DimensionMismatch, "unitary size does not match state");
  }
  Matrix out = unitary * rho.matrix() * unitary.adjoint();
  if (rho.is_bipartite()) return DensityMatrix(std::move(out), rho.dims());
  return DensityMatrix(std::move(out));
}

double shannon_entropy(std::span<const double> p, EntropyUnit unit) {
  require_distribution(p, "distribution");
  const std::vector<double> sorted = sorted_descending(p);
  return convert(std::max(0.0, kernels::entropy_bits(sorted)), unit);
}

double binary_entropy(double x, EntropyUnit unit) {
  const double p[2] = {x, 1.0 - x};
  return shannon_entropy(p, unit);
}

double von_neumann_entropy(const DensityMatrix& rho, EntropyUnit unit) {
  const Spectrum s = spectrum_of(rho);
  return shannon_entropy(s.values(), unit);
}

double mutual_information(const DensityMatrix& rho, EntropyUnit unit) {
  const double s_a = von_neumann_entropy(partial_trace(rho, Subsystem::A), unit);
  const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::B), unit);
  const double s = von_neumann_entropy(rho, unit);
  return std::max(0.0, s_a + s_b - s);
}

Matrix haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Matrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

Matrix haar_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

bool majorizes(std::span<const double> x, std::span<const double> y) {
  require_distribution(x, "x");
  require_distribution(y, "y");
  std::vector<double> xs = sorted_descending(x);
  std::vector<double> ys = sorted_descending(y);
  const std::size_t n = std::max(xs.size(), ys.size());
  xs.resize(n, 0.0);
  ys.resize(n, 0.0);
  double px = 0.0;
  double py = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    px += xs[k];
    py += ys[k];
    if (px < py - kDistributionNegTol) return false;
  }
  return std::abs(px - py) <= kDistributionSumTol;
}

double unitarity_defect(const Matrix& u) {
  return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace orbit
