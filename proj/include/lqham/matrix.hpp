#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lqham {

using Vector = std::vector<double>;

/// Dense row-major real matrix. Entries are checked to be finite when a matrix
/// is built from caller-supplied data; arithmetic results are not re-checked.
class Matrix {
 public:
  Matrix() = default;

  /// rows × cols matrix of zeros.
  Matrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of row-major `entries`. Throws InvalidArgument when the
  /// length differs from rows × cols or an entry is NaN/Inf.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  /// Nested literal, e.g. Matrix{{1, 2}, {3, 4}}. All rows must have equal
  /// length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  /// Column vector n×1.
  static Matrix column(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const double> data() const { return entries_; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  Vector col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const double> v);

  Matrix transpose() const;
  double frobenius_norm() const;
  double trace() const;
  /// (M + Mᵀ)/2.
  Matrix symmetrized() const;

  /// Copies `block` into this matrix with its top-left corner at (i0, j0).
  void set_block(std::size_t i0, std::size_t j0, const Matrix& block);
  /// Adds `scale · block` into this matrix at (i0, j0).
  void add_block(std::size_t i0, std::size_t j0, const Matrix& block,
                 double scale = 1.0);
  Matrix block(std::size_t i0, std::size_t j0, std::size_t rows,
               std::size_t cols) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Vector operator*(const Matrix& a, std::span<const double> x);

// Vector plumbing.
Vector operator+(Vector a, std::span<const double> b);
Vector operator-(Vector a, std::span<const double> b);
Vector operator*(double s, Vector a);
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

/// ‖a − b‖_F.
double distance(const Matrix& a, const Matrix& b);

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Solves M·X = RHS by LU with partial pivoting. Throws SingularMatrix when a
/// pivot magnitude is at or below 1e-12·‖M‖_F.
Matrix solve_linear(const Matrix& m, const Matrix& rhs);

struct NullSpaceBasis {
  std::size_t dim = 0;
  /// c × dim, orthonormal columns.
  Matrix basis;
  double tol = 0.0;
};

/// Orthonormal basis of {z : M·z = 0}. Row reduction with complete pivoting
/// treats pivots at or below tol·‖M‖_F as zero; the free-variable vectors are
/// then orthonormalized by modified Gram-Schmidt with one re-orthogonalization
/// pass.
NullSpaceBasis null_space_basis(const Matrix& m, double tol);

/// Numerical rank under the same row-reduction threshold as null_space_basis.
std::size_t numerical_rank(const Matrix& m, double tol);

/// Eigenvalues of the symmetric part (M + Mᵀ)/2 by cyclic Jacobi, ascending.
Vector symmetric_eigenvalues(const Matrix& m);

/// True iff ‖M − Mᵀ‖_F ≤ sym_tol·max(1, ‖M‖_F) and every eigenvalue of the
/// symmetric part is ≥ −psd_tol.
bool check_symmetric_psd(const Matrix& m, double sym_tol, double psd_tol);

/// Schur stability decided by solving X = M X Mᵀ + I and testing X for PSD.
/// A singular Lyapunov system counts as unstable.
bool check_schur_stable(const Matrix& m);

/// Growth-rate estimate of the spectral radius from repeated multiplication of
/// a fixed start vector. Handles complex dominant pairs since it averages the
/// log growth over many steps instead of tracking a single eigenvector.
double spectral_radius_estimate(const Matrix& m, std::size_t iterations = 1000);

}  // namespace lqham
