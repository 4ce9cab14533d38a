#pragma once

// Canonical transformations of the two-mode quadrature vector (q1, q2, p1, p2):
// the symplectic form, O(4)/Sp(4,R) membership tests, the embedding of U(2)
// as the block matrices S(X, Y), and the fixed rotation families used to
// diagonalize pair coherent variance matrices.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "pcsq/errors.hpp"
#include "pcsq/linalg.hpp"

namespace pcsq {

inline constexpr double kMembershipTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-12;

// [xi_a, xi_b] = i beta_ab.
inline Mat4 beta_form() {
  Mat4 b;
  b(0, 2) = 1.0;
  b(1, 3) = 1.0;
  b(2, 0) = -1.0;
  b(3, 1) = -1.0;
  return b;
}

inline double symplectic_residual(const Mat4& s) {
  const Mat4 beta = beta_form();
  return max_abs(s * beta * s.transpose() - beta);
}

inline double orthogonality_residual(const Mat4& s) {
  return max_abs(s.transpose() * s - Mat4::identity());
}

inline bool is_symplectic(const Mat4& s, double tol = kMembershipTol) {
  return symplectic_residual(s) <= tol;
}

inline bool is_orthogonal(const Mat4& s, double tol = kMembershipTol) {
  return orthogonality_residual(s) <= tol;
}

// A 4x4 real matrix tagged with its group memberships.
struct TransformMatrix {
  Mat4 mat;
  bool is_orthogonal = false;
  bool is_symplectic = false;

  static TransformMatrix classify(const Mat4& m, double tol = kMembershipTol) {
    return {m, pcsq::is_orthogonal(m, tol), pcsq::is_symplectic(m, tol)};
  }
};

// 2x2 complex matrix, row-major.
struct U2Element {
  using complex = std::complex<double>;
  std::array<complex, 4> entries{};

  complex operator()(std::size_t i, std::size_t j) const { return entries[i * 2 + j]; }
  complex& operator()(std::size_t i, std::size_t j) { return entries[i * 2 + j]; }

  static U2Element identity() { return {{complex{1.0}, complex{}, complex{}, complex{1.0}}}; }

  friend U2Element operator*(const U2Element& a, const U2Element& b) {
    U2Element c;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return c;
  }

  // max |U^dagger U - I|
  double unitarity_residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        complex s = std::conj((*this)(0, i)) * (*this)(0, j) + std::conj((*this)(1, i)) * (*this)(1, j);
        if (i == j) s -= 1.0;
        r = std::max(r, std::abs(s));
      }
    return r;
  }
};

// U = X - iY  ->  S(X, Y) = [[X, Y], [-Y, X]].
inline TransformMatrix embed_u2(const U2Element& u) {
  const double res = u.unitarity_residual();
  if (!(res <= kUnitaryTol))
    throw NotUnitary("embed_u2: |U^dagger U - I| = " + std::to_string(res));
  Mat4 s;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double x = u(i, j).real();
      const double y = -u(i, j).imag();
      s(i, j) = x;
      s(i, j + 2) = y;
      s(i + 2, j) = -y;
      s(i + 2, j + 2) = x;
    }
  return TransformMatrix::classify(s);
}

// Inverse of embed_u2 for matrices of the S(X, Y) block form.
inline U2Element u2_from_embedding(const Mat4& s) {
  U2Element u;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) u(i, j) = {s(i, j), -s(i, j + 2)};
  return u;
}

// Plane rotation [[cos t, sin t], [-sin t, cos t]]; same sign convention as
// the 2x2 blocks of rotation_r2.
inline std::array<double, 4> rotation2(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {c, s, -s, c};
}

// diag(R(theta), R(theta)^T): orthogonal, but outside Sp(4,R) unless
// theta = 0 mod pi.
inline TransformMatrix rotation_r1(double theta) {
  const auto r = rotation2(theta);
  Mat4 m;
  m(0, 0) = r[0];
  m(0, 1) = r[1];
  m(1, 0) = r[2];
  m(1, 1) = r[3];
  m(2, 2) = r[0];
  m(2, 3) = r[2];
  m(3, 2) = r[1];
  m(3, 3) = r[3];
  return TransformMatrix::classify(m);
}

// Simultaneous rotations in the 1-4 and 2-3 planes. Equals
// embed_u2([[cos phi, -i sin phi], [-i sin phi, cos phi]]).
inline TransformMatrix rotation_r2(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  Mat4 m{
      {c, 0.0, 0.0, s},
      {0.0, c, s, 0.0},
      {0.0, -s, c, 0.0},
      {-s, 0.0, 0.0, c},
  };
  return TransformMatrix::classify(m);
}

// Rotation by phi in the 1-4 plane and by -phi in the 2-3 plane. This is the
// second stage that actually diagonalizes a pair coherent variance matrix
// after rotation_r1: the two 2x2 blocks left by R1 carry lambda_pm in opposite
// order. Orthogonal; not symplectic unless sin(phi) = 0.
inline TransformMatrix counter_rotation_r2(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  Mat4 m{
      {c, 0.0, 0.0, s},
      {0.0, c, -s, 0.0},
      {0.0, s, c, 0.0},
      {-s, 0.0, 0.0, c},
  };
  return TransformMatrix::classify(m);
}

// Heterodyne one-parameter family
//   U_psi = (1/sqrt 2) [[e^{-i psi/2}, e^{-i psi/2}], [e^{i psi/2}, -e^{i psi/2}]]
// together with its embedding.
inline std::pair<U2Element, TransformMatrix> heterodyne_u(double psi) {
  using complex = std::complex<double>;
  const double h = 1.0 / std::numbers::sqrt2;
  const complex em = std::polar(h, -psi / 2.0);
  const complex ep = std::polar(h, psi / 2.0);
  U2Element u{{em, em, ep, -ep}};
  return {u, embed_u2(u)};
}

// Least eigenvalue of the Hermitian matrix V + (i/2) beta. Non-negative for
// every physical variance matrix. Computed through the real symmetric
// embedding [[A, -B], [B, A]] of H = A + iB, whose spectrum is that of H
// with each eigenvalue doubled in multiplicity.
inline double uncertainty_min_eigenvalue(const Mat4& v) {
  const Mat4 b = beta_form() * 0.5;
  Matrix<8> h;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      h(i, j) = v(i, j);
      h(i + 4, j + 4) = v(i, j);
      h(i, j + 4) = -b(i, j);
      h(i + 4, j) = b(i, j);
    }
  return sym_eigen(h).eigenvalues[0];
}

}  // namespace pcsq
