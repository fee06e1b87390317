#include "lqham/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lqham/error.hpp"
#include "lqham/lyapunov.hpp"

namespace lqham {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorKind::kDimensionMismatch, what);
}

struct RowReduction {
  Matrix reduced;                 // Gauss-Jordan form in permuted columns.
  std::vector<std::size_t> perm;  // perm[j] = original column of position j.
  std::size_t rank = 0;
};

// Gauss-Jordan elimination with complete pivoting. Stops once the largest
// remaining entry is at or below `threshold`.
RowReduction row_reduce(const Matrix& m, double threshold) {
  RowReduction out{m, {}, 0};
  Matrix& a = out.reduced;
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  out.perm.resize(c);
  for (std::size_t j = 0; j < c; ++j) out.perm[j] = j;

  std::size_t k = 0;
  for (; k < std::min(r, c); ++k) {
    std::size_t pi = k;
    std::size_t pj = k;
    double best = 0.0;
    for (std::size_t i = k; i < r; ++i) {
      for (std::size_t j = k; j < c; ++j) {
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pi = i;
          pj = j;
        }
      }
    }
    if (best <= threshold) break;
    if (pi != k) {
      for (std::size_t j = 0; j < c; ++j) std::swap(a(k, j), a(pi, j));
    }
    if (pj != k) {
      for (std::size_t i = 0; i < r; ++i) std::swap(a(i, k), a(i, pj));
      std::swap(out.perm[k], out.perm[pj]);
    }
    const double inv = 1.0 / a(k, k);
    for (std::size_t j = k; j < c; ++j) a(k, j) *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < c; ++j) a(i, j) -= f * a(k, j);
    }
  }
  out.rank = k;
  return out;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorKind::kInvalidArgument,
                "Matrix: expected " + std::to_string(rows * cols) +
                    " entries, got " + std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidArgument, "Matrix: non-finite entry");
    }
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorKind::kInvalidArgument, "Matrix: ragged rows");
    }
    for (double v : r) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kInvalidArgument, "Matrix: non-finite entry");
      }
      entries_.push_back(v);
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Vector Matrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, std::span<const double> v) {
  require(v.size() == rows_, "Matrix::set_col: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::frobenius_norm() const { return norm(entries_); }

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

Matrix Matrix::symmetrized() const {
  require(is_square(), "symmetrized: matrix must be square");
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    }
  }
  return s;
}

void Matrix::set_block(std::size_t i0, std::size_t j0, const Matrix& block) {
  require(i0 + block.rows() <= rows_ && j0 + block.cols() <= cols_,
          "set_block: block out of range");
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) {
      (*this)(i0 + i, j0 + j) = block(i, j);
    }
  }
}

void Matrix::add_block(std::size_t i0, std::size_t j0, const Matrix& block,
                       double scale) {
  require(i0 + block.rows() <= rows_ && j0 + block.cols() <= cols_,
          "add_block: block out of range");
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) {
      (*this)(i0 + i, j0 + j) += scale * block(i, j);
    }
  }
}

Matrix Matrix::block(std::size_t i0, std::size_t j0, std::size_t rows,
                     std::size_t cols) const {
  require(i0 + rows <= rows_ && j0 + cols <= cols_, "block: out of range");
  Matrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  }
  return b;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_,
          "operator+: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    entries_[k] += other.entries_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_,
          "operator-: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    entries_[k] -= other.entries_[k];
  }
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : entries_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "operator*: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), "operator*: vector length mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector operator+(Vector a, std::span<const double> b) {
  require(a.size() == b.size(), "operator+: vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vector operator-(Vector a, std::span<const double> b) {
  require(a.size() == b.size(), "operator-: vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vector operator*(double s, Vector a) {
  for (double& v : a) v *= s;
  return a;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> v) {
  // Scaled accumulation keeps tiny and huge vectors from under/overflowing.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) {
    const double y = x / scale;
    s += y * y;
  }
  return scale * std::sqrt(s);
}

double distance(const Matrix& a, const Matrix& b) {
  return (a - b).frobenius_norm();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      k.add_block(i * b.rows(), j * b.cols(), b, a(i, j));
    }
  }
  return k;
}

Matrix solve_linear(const Matrix& m, const Matrix& rhs) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch, "solve_linear: M not square");
  }
  if (rhs.rows() != m.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "solve_linear: RHS row count differs from M");
  }
  const std::size_t n = m.rows();
  const std::size_t q = rhs.cols();
  const double threshold = 1e-12 * m.frobenius_norm();
  Matrix lu = m;
  Matrix x = rhs;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    }
    if (std::abs(lu(p, k)) <= threshold) {
      throw Error(ErrorKind::kSingularMatrix,
                  "solve_linear: pivot " + std::to_string(k) +
                      " below 1e-12·‖M‖_F");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      for (std::size_t j = 0; j < q; ++j) std::swap(x(k, j), x(p, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < q; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < q; ++j) {
      double s = x(kk, j);
      for (std::size_t i = kk + 1; i < n; ++i) s -= lu(kk, i) * x(i, j);
      x(kk, j) = s / lu(kk, kk);
    }
  }
  return x;
}

NullSpaceBasis null_space_basis(const Matrix& m, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "null_space_basis: tol must be > 0");
  }
  const std::size_t c = m.cols();
  const RowReduction rr = row_reduce(m, tol * m.frobenius_norm());

  std::vector<Vector> vecs;
  vecs.reserve(c - rr.rank);
  for (std::size_t f = rr.rank; f < c; ++f) {
    Vector z(c, 0.0);
    z[rr.perm[f]] = 1.0;
    for (std::size_t i = 0; i < rr.rank; ++i) {
      z[rr.perm[i]] = -rr.reduced(i, f);
    }
    vecs.push_back(std::move(z));
  }

  // Modified Gram-Schmidt, two passes.
  std::vector<Vector> ortho;
  for (Vector& z : vecs) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : ortho) {
        const double proj = dot(q, z);
        for (std::size_t i = 0; i < c; ++i) z[i] -= proj * q[i];
      }
    }
    const double nz = norm(z);
    if (nz == 0.0) continue;
    for (double& v : z) v /= nz;
    ortho.push_back(std::move(z));
  }

  NullSpaceBasis out;
  out.dim = ortho.size();
  out.tol = tol;
  out.basis = Matrix(c, out.dim);
  for (std::size_t j = 0; j < out.dim; ++j) out.basis.set_col(j, ortho[j]);
  return out;
}

std::size_t numerical_rank(const Matrix& m, double tol) {
  return row_reduce(m, tol * m.frobenius_norm()).rank;
}

Vector symmetric_eigenvalues(const Matrix& m) {
  Matrix a = m.symmetrized();
  const std::size_t n = a.rows();
  const double total = a.frobenius_norm();

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (std::sqrt(off) <= 1e-15 * total) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = cs * akp - sn * akq;
          a(k, q) = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = cs * apk - sn * aqk;
          a(q, k) = sn * apk + cs * aqk;
        }
      }
    }
  }

  Vector eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

bool check_symmetric_psd(const Matrix& m, double sym_tol, double psd_tol) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "check_symmetric_psd: matrix must be square");
  }
  if (distance(m, m.transpose()) >
      sym_tol * std::max(1.0, m.frobenius_norm())) {
    return false;
  }
  const Vector eig = symmetric_eigenvalues(m);
  return eig.empty() || eig.front() >= -psd_tol;
}

bool check_schur_stable(const Matrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "check_schur_stable: matrix must be square");
  }
  Matrix x;
  try {
    x = solve_discrete_lyapunov(m, Matrix::identity(m.rows()), 1e-14);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSingularMatrix ||
        e.kind() == ErrorKind::kNoConvergence) {
      return false;  // Stability undecidable.
    }
    throw;
  }
  return check_symmetric_psd(x, 1e-8, 0.0);
}

double spectral_radius_estimate(const Matrix& m, std::size_t iterations) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "spectral_radius_estimate: matrix must be square");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 0.0;
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 1.0 + 0.5 * std::cos(0.7 * static_cast<double>(i) + 0.3);
  }
  const std::size_t burn_in = iterations / 10;
  double log_growth = 0.0;
  for (std::size_t k = 0; k < iterations; ++k) {
    const double before = norm(x);
    x = m * x;
    const double after = norm(x);
    if (after == 0.0) return 0.0;  // Start vector annihilated: nilpotent.
    if (k >= burn_in) log_growth += std::log(after / before);
    for (double& v : x) v /= after;
  }
  return std::exp(log_growth / static_cast<double>(iterations - burn_in));
}

}  // namespace lqham
