#pragma once

// Dense complex matrix kernel: Hermitian eigendecomposition (cyclic Jacobi),
// singular values, trace norm and definiteness tests.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace cfp {

using Complex = std::complex<double>;

/// Dense square matrix of complex doubles, stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n);

  /// Validating factory: square, non-empty, finite entries.
  static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix m);

/// Hermitian matrix. The stored matrix is exactly (A + A*)/2, so it is
/// Hermitian to the last bit.
class HermitianMatrix {
 public:
  /// Empty (0 x 0) placeholder.
  HermitianMatrix() = default;

  /// Rejects non-finite entries and a hermiticity defect above
  /// 1e-12 * (1 + max|a_ij|); smaller defects are symmetrized away.
  explicit HermitianMatrix(const ComplexMatrix& a);

  /// Symmetrizes without the defect check. For results of arithmetic on
  /// Hermitian operands (A* H A sums and the like), where the defect is
  /// pure round-off.
  static HermitianMatrix symmetrize(const ComplexMatrix& a);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::initializer_list<double> values);

  const ComplexMatrix& matrix() const noexcept { return a_; }
  std::size_t dim() const noexcept { return a_.dim(); }
  double hermiticity_defect() const noexcept { return defect_; }

  friend bool operator==(const HermitianMatrix& l, const HermitianMatrix& r) {
    return l.a_ == r.a_;
  }

 private:
  ComplexMatrix a_;
  double defect_ = 0.0;
};

HermitianMatrix operator+(const HermitianMatrix& lhs, const HermitianMatrix& rhs);
HermitianMatrix operator-(const HermitianMatrix& lhs, const HermitianMatrix& rhs);
HermitianMatrix operator*(double s, const HermitianMatrix& m);

/// Eigenvalues sorted descending; columns of `eigenvectors` are the
/// matching unit eigenvectors.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

struct JacobiOptions {
  int max_sweeps = 100;
  double relative_threshold = 1e-13;
};

SpectralDecomposition hermitian_eigendecomposition(const HermitianMatrix& a,
                                                   const JacobiOptions& options = {});

/// Singular values, descending. Computed as sqrt of the eigenvalues of A*A
/// with negative round-off clamped to zero.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Sum of singular values (nuclear / Schatten-1 norm).
double trace_norm(const ComplexMatrix& a);
inline double trace_norm(const HermitianMatrix& a) { return trace_norm(a.matrix()); }

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);

inline constexpr double kDefaultDefinitenessTol = 1e-10;

/// lambda_min >= -tol * max(1, lambda_max), tol floored at 1e-14.
bool is_positive_semidefinite(const HermitianMatrix& a, double tol = kDefaultDefinitenessTol);
/// lambda_min > tol * max(1, |lambda|_max), tol floored at 1e-14.
bool is_positive_definite(const HermitianMatrix& a, double tol = kDefaultDefinitenessTol);

/// U diag(map(lambda_i)) U*. Throws NonFiniteValue carrying the eigenvalue
/// at which `scalar_map` left the finite reals.
HermitianMatrix apply_spectral_function(const HermitianMatrix& a,
                                        const std::function<double(double)>& scalar_map);

// Random test matrices. Entries are independent complex standard normals.
ComplexMatrix random_complex_matrix(std::size_t n, std::mt19937_64& rng);
HermitianMatrix random_hermitian(std::size_t n, std::mt19937_64& rng);
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

std::string to_string(const ComplexMatrix& a);

}  // namespace cfp
