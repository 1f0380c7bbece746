#include "cfp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cfp/errors.hpp"

namespace cfp {

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw std::invalid_argument("matrix must have at least one row");
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("matrix is not square: row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = rows[i][j];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("non-finite matrix entry at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
      m(i, j) = z;
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

static void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double hermiticity_defect_of(const ComplexMatrix& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  return d;
}

ComplexMatrix symmetrized(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  if (a.dim() == 0) throw std::invalid_argument("Hermitian matrix must be non-empty");
  if (!a.all_finite()) throw std::invalid_argument("Hermitian matrix has non-finite entries");
  defect_ = hermiticity_defect_of(a);
  const double limit = 1e-12 * (1.0 + a.max_abs());
  if (defect_ > limit) {
    std::ostringstream os;
    os << "matrix is not Hermitian: defect " << defect_ << " exceeds " << limit;
    throw std::invalid_argument(os.str());
  }
  a_ = symmetrized(a);
}

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& a) {
  HermitianMatrix h;
  h.defect_ = hermiticity_defect_of(a);
  h.a_ = symmetrized(a);
  return h;
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> values) {
  return HermitianMatrix(ComplexMatrix::diagonal(values));
}

HermitianMatrix operator+(const HermitianMatrix& lhs, const HermitianMatrix& rhs) {
  return HermitianMatrix::symmetrize(lhs.matrix() + rhs.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& lhs, const HermitianMatrix& rhs) {
  return HermitianMatrix::symmetrize(lhs.matrix() - rhs.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& m) {
  return HermitianMatrix::symmetrize(m.matrix() * Complex(s));
}

// ---------------------------------------------------------------------------

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const ComplexMatrix& u = eigenvectors;
  const std::size_t n = u.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += u(i, k) * eigenvalues[k] * std::conj(u(j, k));
      out(i, j) = s;
    }
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p, q). With a(p, q) = r e^{i theta}
// the unitary is V = diag(1, e^{-i theta}) * R, R the real rotation that
// diagonalizes [[a_pp, r], [r, a_qq]].
void rotate(ComplexMatrix& a, ComplexMatrix& u, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i theta}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex vqp = -s * std::conj(phase);
  const Complex vqq = c * std::conj(phase);

  const std::size_t n = a.dim();
  // A <- A V
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp + vqp * akq;
    a(k, q) = s * akp + vqq * akq;
  }
  // A <- V* A
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(vqp) * aqk;
    a(q, k) = s * apk + std::conj(vqq) * aqk;
  }
  // U <- U V
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ukp = u(k, p);
    const Complex ukq = u(k, q);
    u(k, p) = c * ukp + vqp * ukq;
    u(k, q) = s * ukp + vqq * ukq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

SpectralDecomposition hermitian_eigendecomposition(const HermitianMatrix& h,
                                                   const JacobiOptions& options) {
  ComplexMatrix a = h.matrix();
  const std::size_t n = a.dim();
  ComplexMatrix u = ComplexMatrix::identity(n);
  const double threshold = options.relative_threshold * a.frobenius_norm();

  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > threshold) {
    if (sweep == options.max_sweeps) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge after " << sweep << " sweeps on " << n << "x"
         << n << " matrix (off-diagonal residual " << off << ", threshold " << threshold
         << "):\n"
         << to_string(h.matrix());
      throw EigenSolverError(os.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, u, p, q);
    off = off_diagonal_norm(a);
    ++sweep;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a(l, l).real() > a(r, r).real();
  });

  SpectralDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = u(i, order[k]);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  const auto gram = HermitianMatrix::symmetrize(a.adjoint() * a);
  auto values = hermitian_eigendecomposition(gram).eigenvalues;
  for (double& v : values) v = std::sqrt(std::max(v, 0.0));
  return values;
}

double trace_norm(const ComplexMatrix& a) {
  const auto sv = singular_values(a);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

double min_eigenvalue(const HermitianMatrix& a) {
  return hermitian_eigendecomposition(a).eigenvalues.back();
}

double max_eigenvalue(const HermitianMatrix& a) {
  return hermitian_eigendecomposition(a).eigenvalues.front();
}

bool is_positive_semidefinite(const HermitianMatrix& a, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be non-negative");
  const auto ev = hermitian_eigendecomposition(a).eigenvalues;
  const double scale = std::max(1.0, ev.front());
  return ev.back() >= -std::max(tol, 1e-14) * scale;
}

bool is_positive_definite(const HermitianMatrix& a, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be non-negative");
  const auto ev = hermitian_eigendecomposition(a).eigenvalues;
  const double scale = std::max({1.0, std::abs(ev.front()), std::abs(ev.back())});
  return ev.back() > std::max(tol, 1e-14) * scale;
}

HermitianMatrix apply_spectral_function(const HermitianMatrix& a,
                                        const std::function<double(double)>& scalar_map) {
  const auto dec = hermitian_eigendecomposition(a);
  const std::size_t n = a.dim();
  std::vector<double> mapped(n);
  for (std::size_t k = 0; k < n; ++k) {
    mapped[k] = scalar_map(dec.eigenvalues[k]);
    if (!std::isfinite(mapped[k])) {
      std::ostringstream os;
      os << "spectral map produced " << mapped[k] << " at eigenvalue " << dec.eigenvalues[k];
      throw NonFiniteValue(os.str(), dec.eigenvalues[k]);
    }
  }
  return HermitianMatrix::symmetrize(
      SpectralDecomposition{std::move(mapped), dec.eigenvectors}.reconstruct());
}

ComplexMatrix random_complex_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

HermitianMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  return HermitianMatrix::symmetrize(random_complex_matrix(n, rng));
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  return hermitian_eigendecomposition(random_hermitian(n, rng)).eigenvectors;
}

std::string to_string(const ComplexMatrix& a) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (j) os << ", ";
      os << a(i, j).real() << (a(i, j).imag() < 0 ? "-" : "+") << std::abs(a(i, j).imag())
         << "i";
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace cfp
