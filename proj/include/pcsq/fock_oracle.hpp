#pragma once

// Brute-force ground truth for pair coherent states in a truncated two-mode
// Fock space. The quadratures are materialized as dense complex matrices over
// the full product basis |m, n>, m <= ncut + q, n <= ncut, and every moment
// comes from explicit matrix-vector products. Nothing here uses the series
// identities of pair_coherent.hpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "pcsq/errors.hpp"
#include "pcsq/linalg.hpp"
#include "pcsq/pair_coherent.hpp"

namespace pcsq {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kTruncationTol = 1e-8;

class DenseCMatrix {
 public:
  DenseCMatrix() = default;
  explicit DenseCMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  CVector apply(const CVector& x) const {
    CVector y(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const cplx* row = &data_[i * dim_];
      cplx acc{};
      for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  double hermiticity_residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return r;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

inline cplx inner(const CVector& a, const CVector& b) {
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Truncated pair coherent state: coeffs[n] multiplies |n+q, n>.
struct FockState {
  CVector coeffs;
  int q = 0;
  int ncut = 0;
  // |c_{ncut+1}|^2 after normalization: weight of the first dropped term.
  double tail_bound = 0.0;
};

// max(20, ceil(4|z| + 10 sqrt|z| + q)).
inline int default_truncation(const PairParams& params) {
  const double r = params.zeta.abs();
  return std::max(20, static_cast<int>(std::ceil(4.0 * r + 10.0 * std::sqrt(r) + params.q)));
}

inline FockState build_state(const PairParams& params, int ncut, double tail_tol = kTruncationTol) {
  validate(params);
  if (ncut < 1) throw DomainError("build_state: ncut must be >= 1");
  const cplx z = params.zeta.value();
  const int q = params.q;

  // c_n = z^n / sqrt(n! (n+q)!) up to a common factor, by recurrence.
  CVector c(static_cast<std::size_t>(ncut) + 2);
  c[0] = 1.0;
  for (int n = 0; n <= ncut; ++n)
    c[n + 1] = c[n] * z / std::sqrt(static_cast<double>(n + 1) * static_cast<double>(n + 1 + q));

  double norm2 = 0.0;
  for (int n = 0; n <= ncut; ++n) norm2 += std::norm(c[n]);
  const double scale = 1.0 / std::sqrt(norm2);

  FockState st;
  st.q = q;
  st.ncut = ncut;
  st.tail_bound = std::norm(c[ncut + 1]) / norm2;
  c.pop_back();
  for (auto& v : c) v *= scale;
  st.coeffs = std::move(c);
  if (!(st.tail_bound <= tail_tol))
    throw TruncationTooSmall("build_state: tail bound " + std::to_string(st.tail_bound) +
                             " exceeds " + std::to_string(tail_tol) + " at ncut = " +
                             std::to_string(ncut));
  return st;
}

// Dense q1, q2, p1, p2 over the product basis, index(m, n) = m * (nmax + 1) + n.
struct QuadOps {
  int q = 0;
  int ncut = 0;
  std::size_t dim1 = 0;  // mode-1 levels: ncut + q + 1
  std::size_t dim2 = 0;  // mode-2 levels: ncut + 1
  std::array<DenseCMatrix, 4> ops;  // q1, q2, p1, p2

  std::size_t dim() const { return dim1 * dim2; }
  std::size_t index(std::size_t m, std::size_t n) const { return m * dim2 + n; }
  const DenseCMatrix& operator[](std::size_t a) const { return ops[a]; }
};

inline QuadOps build_quadrature_ops(int q, int ncut) {
  QuadOps qo;
  qo.q = q;
  qo.ncut = ncut;
  qo.dim1 = static_cast<std::size_t>(ncut + q + 1);
  qo.dim2 = static_cast<std::size_t>(ncut + 1);
  const std::size_t d = qo.dim();
  for (auto& op : qo.ops) op = DenseCMatrix(d);

  const double h = 1.0 / std::numbers::sqrt2;
  const cplx i_unit{0.0, 1.0};
  // q = (a + a^dag)/sqrt2, p = -i (a - a^dag)/sqrt2; a|k> = sqrt(k)|k-1>.
  for (std::size_t m = 0; m < qo.dim1; ++m)
    for (std::size_t n = 0; n < qo.dim2; ++n) {
      const std::size_t col = qo.index(m, n);
      if (m > 0) {
        const std::size_t row = qo.index(m - 1, n);
        const double amp = std::sqrt(static_cast<double>(m)) * h;
        qo.ops[0](row, col) += amp;            // a1
        qo.ops[0](col, row) += amp;            // a1^dag
        qo.ops[2](row, col) += -i_unit * amp;  // -i a1
        qo.ops[2](col, row) += i_unit * amp;   // +i a1^dag
      }
      if (n > 0) {
        const std::size_t row = qo.index(m, n - 1);
        const double amp = std::sqrt(static_cast<double>(n)) * h;
        qo.ops[1](row, col) += amp;
        qo.ops[1](col, row) += amp;
        qo.ops[3](row, col) += -i_unit * amp;
        qo.ops[3](col, row) += i_unit * amp;
      }
    }
  return qo;
}

inline CVector product_vector(const FockState& st, const QuadOps& qo) {
  if (st.q != qo.q || st.ncut != qo.ncut)
    throw DomainError("product_vector: state and operators built for different (q, ncut)");
  CVector psi(qo.dim());
  for (int n = 0; n <= st.ncut; ++n)
    psi[qo.index(static_cast<std::size_t>(n + st.q), static_cast<std::size_t>(n))] = st.coeffs[n];
  return psi;
}

struct Moments {
  std::array<double, 4> first{};
  Mat4 second;                 // symmetrized second moments (variance matrix)
  double imag_residue = 0.0;   // max imaginary part seen in any moment
};

inline Moments numeric_moments(const FockState& st, const QuadOps& qo) {
  const CVector psi = product_vector(st, qo);
  std::array<CVector, 4> applied;
  for (std::size_t a = 0; a < 4; ++a) applied[a] = qo[a].apply(psi);

  Moments mo;
  for (std::size_t a = 0; a < 4; ++a) {
    const cplx m1 = inner(psi, applied[a]);
    mo.first[a] = m1.real();
    mo.imag_residue = std::max(mo.imag_residue, std::abs(m1.imag()));
  }
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b) {
      // <psi| (A B + B A) |psi> / 2 with A, B Hermitian.
      const cplx m2 = 0.5 * (inner(applied[a], applied[b]) + inner(applied[b], applied[a]));
      mo.second(a, b) = m2.real();
      mo.second(b, a) = m2.real();
      mo.imag_residue = std::max(mo.imag_residue, std::abs(m2.imag()));
    }
  return mo;
}

// V_ab = 1/2 <{xi_a, xi_b}> - <xi_a><xi_b>. The centering term is zero for
// pair coherent states; it is kept so a non-zero first moment would show up
// as a discrepancy in the first moments, not in V.
inline VarianceMatrix numeric_variance(const FockState& st, const QuadOps& qo) {
  const Moments mo = numeric_moments(st, qo);
  Mat4 v = mo.second;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) v(a, b) -= mo.first[a] * mo.first[b];
  return {v};
}

inline VarianceMatrix numeric_variance(const FockState& st) {
  return numeric_variance(st, build_quadrature_ops(st.q, st.ncut));
}

inline PhotonNumbers numeric_photons(const FockState& st) {
  double n2 = 0.0;
  for (int n = 0; n <= st.ncut; ++n) n2 += n * std::norm(st.coeffs[n]);
  double total = 0.0;
  for (const auto& c : st.coeffs) total += std::norm(c);
  n2 /= total;
  return {n2 + st.q, n2};
}

// max |((a1 a2 - zeta) psi)_k| over components k whose pre-image lies inside
// the truncation, i.e. excluding the |ncut+q, ncut> boundary component.
inline double pair_eigen_residual(const FockState& st, const QuadOps& qo, cplx zeta) {
  const CVector psi = product_vector(st, qo);
  const double h = 1.0 / std::numbers::sqrt2;
  const cplx i_unit{0.0, 1.0};
  auto lower = [&](std::size_t mode, const CVector& x) {
    // a_j = (q_j + i p_j) / sqrt2
    const CVector qx = qo[mode].apply(x);
    const CVector px = qo[mode + 2].apply(x);
    CVector out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = h * (qx[k] + i_unit * px[k]);
    return out;
  };
  const CVector lowered = lower(0, lower(1, psi));
  double r = 0.0;
  for (std::size_t m = 0; m < qo.dim1; ++m)
    for (std::size_t n = 0; n < qo.dim2; ++n) {
      if (n == qo.dim2 - 1 || m == qo.dim1 - 1) continue;
      const std::size_t k = qo.index(m, n);
      r = std::max(r, std::abs(lowered[k] - zeta * psi[k]));
    }
  return r;
}

// max |([q_j, p_j] - i) e_k|, over basis vectors e_k at least `margin` levels
// away from both truncation edges. O(dim^3); meant for small truncations.
inline double commutator_residual(const QuadOps& qo, std::size_t mode, std::size_t margin = 1) {
  const std::size_t d = qo.dim();
  const cplx i_unit{0.0, 1.0};
  double r = 0.0;
  for (std::size_t m = 0; m + margin < qo.dim1; ++m)
    for (std::size_t n = 0; n + margin < qo.dim2; ++n) {
      CVector e(d);
      const std::size_t k = qo.index(m, n);
      e[k] = 1.0;
      const CVector qp = qo[mode].apply(qo[mode + 2].apply(e));
      const CVector pq = qo[mode + 2].apply(qo[mode].apply(e));
      for (std::size_t j = 0; j < d; ++j) {
        const cplx expect = j == k ? i_unit : cplx{};
        r = std::max(r, std::abs(qp[j] - pq[j] - expect));
      }
    }
  return r;
}

// Everything the oracle-agreement checks need for one (zeta, q) point.
struct OracleComparison {
  int ncut = 0;
  double tail_bound = 0.0;
  double variance_dev = 0.0;   // max |V_numeric - V_analytic|
  double photon_dev = 0.0;     // max over modes
  double first_moment = 0.0;   // max |<xi_a>|
  double imag_residue = 0.0;
};

inline OracleComparison compare_with_analytic(const PairParams& params, const QuadOps& qo) {
  const FockState st = build_state(params, qo.ncut);
  const Moments mo = numeric_moments(st, qo);
  Mat4 vnum = mo.second;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) vnum(a, b) -= mo.first[a] * mo.first[b];
  const VarianceMatrix van = variance_matrix(params);
  const PhotonNumbers pn = numeric_photons(st);
  const PhotonNumbers pa = photon_numbers(params);

  OracleComparison out;
  out.ncut = st.ncut;
  out.tail_bound = st.tail_bound;
  out.variance_dev = max_abs(vnum - van.mat);
  out.photon_dev = std::max(std::abs(pn.n1 - pa.n1), std::abs(pn.n2 - pa.n2));
  for (double f : mo.first) out.first_moment = std::max(out.first_moment, std::abs(f));
  out.imag_residue = mo.imag_residue;
  return out;
}

inline OracleComparison compare_with_analytic(const PairParams& params) {
  return compare_with_analytic(params, build_quadrature_ops(params.q, default_truncation(params)));
}

}  // namespace pcsq
