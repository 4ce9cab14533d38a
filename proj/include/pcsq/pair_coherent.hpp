#pragma once

// Closed-form second-moment analysis of two-mode pair coherent states |zeta, q>.
//
// The state is the joint eigenstate of a1 a2 (eigenvalue zeta) and of the
// photon-number difference n1 - n2 (eigenvalue q >= 0). Its first moments
// vanish and its variance matrix in (q1, q2, p1, p2) order is
//
//   [ N1+1/2   Re z     0       Im z  ]
//   [ Re z     N2+1/2   Im z    0     ]
//   [ 0        Im z     N1+1/2  -Re z ]
//   [ Im z     0        -Re z   N2+1/2]
//
// with N2 = |z|^2 S(q+1)/S(q), N1 = N2 + q, S(q) = sum_n |z|^2n / (n! (n+q)!).
// Its spectrum is {e_down, e_down, e_up, e_up}, reached by
// counter_rotation_r2(phi) R1(theta).

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

#include "pcsq/errors.hpp"
#include "pcsq/linalg.hpp"
#include "pcsq/symplectic.hpp"

namespace pcsq {

inline constexpr double kSeriesRelTol = 1e-16;
inline constexpr double kMaxAmplitude = 1e3;
// Guard band around 1/2 for the squeezing verdict.
inline constexpr double kSqueezeGuard = 1e-12;
inline constexpr int kHeterodyneGridPoints = 256;

struct ComplexAmplitude {
  double re = 0.0;
  double im = 0.0;

  double abs() const { return std::hypot(re, im); }
  double norm() const { return re * re + im * im; }
  double arg() const { return std::atan2(im, re); }
  std::complex<double> value() const { return {re, im}; }

  static ComplexAmplitude polar(double r, double theta) {
    return {r * std::cos(theta), r * std::sin(theta)};
  }
};

struct PairParams {
  ComplexAmplitude zeta;
  int q = 0;
};

inline void validate(const PairParams& p) {
  if (p.q < 0) throw DomainError("photon-number difference q must be >= 0, got " + std::to_string(p.q));
  if (!std::isfinite(p.zeta.re) || !std::isfinite(p.zeta.im))
    throw DomainError("zeta must be finite");
  if (p.zeta.abs() > kMaxAmplitude)
    throw DomainError("|zeta| exceeds the supported range " + std::to_string(kMaxAmplitude));
}

struct VarianceMatrix {
  Mat4 mat;
};

struct PhotonNumbers {
  double n1 = 0.0;
  double n2 = 0.0;
};

struct Spectrum {
  double e_down = 0.0;
  double e_up = 0.0;
};

struct SqueezeReport {
  double n1 = 0.0;
  double n2 = 0.0;
  double e_down = 0.0;
  double e_up = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double psi_star = 0.0;
  bool squeezed = false;
};

namespace detail {

// q! * S(q) = sum_n q! x^n / (n! (n+q)!). The leading term is 1 for every q,
// so large q never underflows. Stops after ten consecutive terms, past the
// peak, that fall below rel_tol relative to the running sum.
inline double scaled_series(double x, int q, double rel_tol) {
  double term = 1.0;
  double sum = 1.0;
  int quiet = 0;
  for (std::int64_t n = 0; quiet < 10; ++n) {
    const double ratio = x / (static_cast<double>(n + 1) * static_cast<double>(n + 1 + q));
    term *= ratio;
    sum += term;
    if (!std::isfinite(term) || !std::isfinite(sum))
      throw Overflow("normalization series overflowed at n = " + std::to_string(n + 1));
    if (ratio < 1.0 && term < rel_tol * sum)
      ++quiet;
    else
      quiet = 0;
  }
  return sum;
}

inline double factorial(int q) {
  double f = 1.0;
  for (int k = 2; k <= q; ++k) f *= k;
  return f;
}

}  // namespace detail

// sum_n |zeta|^2n / (n! (n+q)!), the inverse square of the normalization N_q.
inline double norm_series(const PairParams& params, double rel_tol = kSeriesRelTol) {
  validate(params);
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
    throw DomainError("norm_series: rel_tol must lie in (0, 1e-3]");
  const double scaled = detail::scaled_series(params.zeta.norm(), params.q, rel_tol);
  const double fact = detail::factorial(params.q);
  double value = std::isfinite(fact) ? scaled / fact
                                     : std::exp(std::log(scaled) - std::lgamma(params.q + 1.0));
  if (!(value > 0.0) || !std::isfinite(value))
    throw Overflow("norm_series: result outside floating-point range");
  return value;
}

// <a1^dag a1>, <a2^dag a2>.
inline PhotonNumbers photon_numbers(const PairParams& params) {
  validate(params);
  const double x = params.zeta.norm();
  if (x == 0.0) return {static_cast<double>(params.q), 0.0};
  const double s_q = detail::scaled_series(x, params.q, kSeriesRelTol);
  const double s_q1 = detail::scaled_series(x, params.q + 1, kSeriesRelTol);
  const double n2 = x * s_q1 / ((params.q + 1.0) * s_q);
  return {n2 + params.q, n2};
}

inline VarianceMatrix variance_matrix(const PairParams& params) {
  const auto [n1, n2] = photon_numbers(params);
  const double a = params.zeta.re;
  const double b = params.zeta.im;
  const double d1 = n1 + 0.5;
  const double d2 = n2 + 0.5;
  return {Mat4{
      {d1, a, 0.0, b},
      {a, d2, b, 0.0},
      {0.0, b, d1, -a},
      {b, 0.0, -a, d2},
  }};
}

// lambda_pm = (q +- sqrt(q^2 + 4 (Re zeta)^2)) / 2, eigenvalues of
// [[q, Re zeta], [Re zeta, 0]].
inline std::array<double, 2> stage1_lambdas(const PairParams& params) {
  const double q = params.q;
  const double a = params.zeta.re;
  const double root = std::sqrt(q * q + 4.0 * a * a);
  // lambda_- via the product lambda_+ lambda_- = -(Re zeta)^2 to avoid cancellation.
  const double plus = 0.5 * (q + root);
  const double minus = plus > 0.0 ? -a * a / plus : 0.0;
  return {plus, minus};
}

// theta in (-pi/4, pi/4] with R(theta) [[q, Re z], [Re z, 0]] R(theta)^T diagonal.
inline double stage1_angle(const PairParams& params) {
  validate(params);
  const double a = params.zeta.re;
  if (a == 0.0) return 0.0;
  if (params.q == 0) return std::numbers::pi / 4.0;
  return 0.5 * std::atan(2.0 * a / params.q);
}

// Diagonal of R(theta) [[q, Re z], [Re z, 0]] R(theta)^T at the stage-1
// angle. This is (lambda_+, lambda_-) except for q = 0 with Re z < 0, where
// the pinned branch theta = pi/4 yields (lambda_-, lambda_+).
inline std::array<double, 2> stage1_diagonal(const PairParams& params) {
  const auto [plus, minus] = stage1_lambdas(params);
  if (params.q == 0 && params.zeta.re < 0.0) return {minus, plus};
  return {plus, minus};
}

// phi in (-pi/4, pi/4] diagonalizing [[d1, Im z], [Im z, d2]] where (d1, d2)
// is the stage-1 diagonal. R2(phi) zeroes the 1-4 coupling; the 2-3 block
// holds (d2, d1) and needs the opposite angle.
inline double stage2_angle(const PairParams& params) {
  validate(params);
  const double b = params.zeta.im;
  if (b == 0.0) return 0.0;
  const auto [d1, d2] = stage1_diagonal(params);
  const double gap = d1 - d2;
  if (gap == 0.0) return std::numbers::pi / 4.0;
  return 0.5 * std::atan(2.0 * b / gap);
}

inline Spectrum analytic_spectrum(const PairParams& params) {
  const auto [n1, n2] = photon_numbers(params);
  const double q = params.q;
  const double x = params.zeta.norm();
  const double root = std::sqrt(q * q + 4.0 * x);
  // (q - root)/2 rewritten as -2|z|^2 / (q + root).
  const double lower = root > 0.0 ? -2.0 * x / (q + root) : 0.0;
  const double base = n2 + 0.5;
  return {base + lower, base + 0.5 * (q + root)};
}

struct Diagonalization {
  TransformMatrix r;  // counter_rotation_r2(phi) R1(theta)
  Mat4 d;             // r V r^T
};

inline Diagonalization diagonalize(const PairParams& params) {
  const VarianceMatrix v = variance_matrix(params);
  const Mat4 r =
      counter_rotation_r2(stage2_angle(params)).mat * rotation_r1(stage1_angle(params)).mat;
  return {TransformMatrix::classify(r), r * v.mat * r.transpose()};
}

inline bool is_squeezed(const PairParams& params) {
  return analytic_spectrum(params).e_down < 0.5 - kSqueezeGuard;
}

// (S V S^T)_11 for S the embedding of the heterodyne element U_psi.
inline double heterodyne_leading_entry(const VarianceMatrix& v, double psi) {
  const Mat4 s = heterodyne_u(psi).second.mat;
  return (s * v.mat * s.transpose())(0, 0);
}

struct LeadingPosition {
  double psi_star = 0.0;    // in [0, 2 pi)
  TransformMatrix s;        // embedding of U_{psi_star}
  double leading = 0.0;     // (S V S^T)_11 at psi_star
  double e_down = 0.0;

  // How far the best heterodyne quadrature sits above the least eigenvalue.
  double gap() const { return leading - e_down; }
};

// Minimizes the leading diagonal entry of S(X_psi, Y_psi) V S^T over psi by a
// 256-point grid followed by golden-section refinement around the best cell.
inline LeadingPosition leading_position_transform(const PairParams& params) {
  validate(params);
  if (params.zeta.re == 0.0 && params.zeta.im == 0.0)
    throw ZeroAmplitude("leading_position_transform: zeta = 0, every psi is a minimizer");

  const VarianceMatrix v = variance_matrix(params);
  auto f = [&v](double psi) { return heterodyne_leading_entry(v, psi); };

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double h = two_pi / kHeterodyneGridPoints;
  int best = 0;
  double best_val = f(0.0);
  for (int k = 1; k < kHeterodyneGridPoints; ++k) {
    const double val = f(k * h);
    if (val < best_val) {
      best_val = val;
      best = k;
    }
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best * h - h;
  double hi = best * h + h;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  double psi = 0.5 * (lo + hi);
  double val = f(psi);
  if (best_val < val) {
    psi = best * h;
    val = best_val;
  }
  psi = std::fmod(psi, two_pi);
  if (psi < 0.0) psi += two_pi;

  return {psi, heterodyne_u(psi).second, val, analytic_spectrum(params).e_down};
}

// A U(2) element (outside the heterodyne family in general) whose embedding
// puts e_down in the leading diagonal slot: its first row is the e_down
// eigenvector read off the analytic diagonalization.
inline std::pair<U2Element, TransformMatrix> leading_position_u2(const PairParams& params) {
  const Diagonalization dz = diagonalize(params);
  std::size_t row = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (dz.d(i, i) < dz.d(row, row)) row = i;
  const Mat4& r = dz.r.mat;
  U2Element u;
  u(0, 0) = {r(row, 0), -r(row, 2)};
  u(0, 1) = {r(row, 1), -r(row, 3)};
  u(1, 0) = -std::conj(u(0, 1));
  u(1, 1) = std::conj(u(0, 0));
  return {u, embed_u2(u)};
}

inline SqueezeReport analyze(const PairParams& params) {
  const auto [n1, n2] = photon_numbers(params);
  const auto [e_down, e_up] = analytic_spectrum(params);
  SqueezeReport rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.e_down = e_down;
  rep.e_up = e_up;
  rep.theta = stage1_angle(params);
  rep.phi = stage2_angle(params);
  // zeta = 0: every psi minimizes, report 0.
  rep.psi_star = params.zeta.norm() == 0.0 ? 0.0 : leading_position_transform(params).psi_star;
  rep.squeezed = e_down < 0.5 - kSqueezeGuard;
  return rep;
}

}  // namespace pcsq
