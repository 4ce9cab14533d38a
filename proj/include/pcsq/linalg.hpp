#pragma once

// Small fixed-size dense real matrices and a cyclic Jacobi eigen-solver.
//
// Everything here is sized at compile time. Mat4 is the working type for
// variance matrices and canonical transformations in (q1, q2, p1, p2) order;
// Matrix<8> appears only as the real embedding of a 4x4 Hermitian matrix.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>

#include "pcsq/errors.hpp"

namespace pcsq {

template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t size = N;

  constexpr Matrix() : data_{} {}

  // Row-major nested initializer: Matrix<2>{{1, 2}, {3, 4}}.
  constexpr Matrix(std::initializer_list<std::initializer_list<double>> rows) : data_{} {
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (double v : row) {
        if (i < N && j < N) data_[i * N + j] = v;
        ++j;
      }
      ++i;
    }
  }

  static constexpr Matrix zero() { return Matrix{}; }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr double& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return data_[i * N + j]; }

  constexpr Matrix transpose() const {
    Matrix t;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  constexpr double trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += (*this)(i, i);
    return s;
  }

  constexpr std::array<double, N> diag() const {
    std::array<double, N> d{};
    for (std::size_t i = 0; i < N; ++i) d[i] = (*this)(i, i);
    return d;
  }

  constexpr Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  constexpr Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  constexpr Matrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend constexpr Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend constexpr Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend constexpr Matrix operator-(Matrix a) { return a *= -1.0; }
  friend constexpr Matrix operator*(Matrix a, double s) { return a *= s; }
  friend constexpr Matrix operator*(double s, Matrix a) { return a *= s; }

  friend constexpr Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;

  const std::array<double, N * N>& data() const { return data_; }

 private:
  std::array<double, N * N> data_;
};

using Mat4 = Matrix<4>;

template <std::size_t N>
constexpr Matrix<N> mat_mul(const Matrix<N>& a, const Matrix<N>& b) {
  return a * b;
}

// Largest absolute entry; this is the norm every tolerance in the library
// refers to.
template <std::size_t N>
double max_abs(const Matrix<N>& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

template <std::size_t N>
double frobenius(const Matrix<N>& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

template <std::size_t N>
double max_abs_offdiag(const Matrix<N>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

template <std::size_t N>
double asymmetry(const Matrix<N>& a) {
  return max_abs(a - a.transpose());
}

template <std::size_t N>
bool all_finite(const Matrix<N>& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](double v) { return std::isfinite(v); });
}

// Determinant by Gaussian elimination with partial pivoting.
template <std::size_t N>
double determinant(Matrix<N> a) {
  double det = 1.0;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < N; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < N; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < N; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

template <std::size_t N>
struct SymSpectrum {
  std::array<double, N> eigenvalues{};  // ascending
  Matrix<N> eigenvectors;               // column k pairs with eigenvalues[k]
  int sweeps = 0;
};

struct JacobiOptions {
  double symmetry_tol = 1e-12;
  // Off-diagonal Frobenius threshold, scaled by max(1, ||A||_F).
  double offdiag_tol = 1e-13;
  int max_sweeps = 100;
};

// Cyclic Jacobi: fixed (p, q) sweep order, so the result is a deterministic
// function of the input. Eigenvalues come back ascending with ties kept in
// original diagonal order.
template <std::size_t N>
SymSpectrum<N> sym_eigen(const Matrix<N>& input, const JacobiOptions& opt = {}) {
  if (!all_finite(input)) throw NotSymmetric("sym_eigen: non-finite entry");
  const double asym = asymmetry(input);
  if (asym > opt.symmetry_tol)
    throw NotSymmetric("sym_eigen: matrix not symmetric (|A - A^T| = " + std::to_string(asym) + ")");

  Matrix<N> a = (input + input.transpose()) * 0.5;
  Matrix<N> v = Matrix<N>::identity();
  const double threshold = opt.offdiag_tol * std::max(1.0, frobenius(a));

  auto off_norm = [&a] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep == opt.max_sweeps)
      throw NoConvergence("sym_eigen: off-diagonal norm did not converge within " +
                          std::to_string(opt.max_sweeps) + " sweeps");
    ++sweep;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from cot(2t) = (a_qq - a_pp) / (2 a_pq), smaller root.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymSpectrum<N> out;
  out.sweeps = sweep;
  for (std::size_t k = 0; k < N; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < N; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

template <std::size_t N>
SymSpectrum<N> sym_eigen(const Matrix<N>& input, double tol) {
  JacobiOptions opt;
  opt.symmetry_tol = tol;
  return sym_eigen(input, opt);
}

}  // namespace pcsq
