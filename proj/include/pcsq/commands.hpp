#pragma once

// Implementations behind the `pcsq` command-line tool. Each command writes
// to caller-supplied streams and returns the process exit code, so the same
// code paths are exercised by the tests and by the binary.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcsq/errors.hpp"
#include "pcsq/fock_oracle.hpp"
#include "pcsq/linalg.hpp"
#include "pcsq/pair_coherent.hpp"
#include "pcsq/symplectic.hpp"

namespace pcsq {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitDomain = 2,
  kExitOverflow = 3,
  kExitIo = 4,
};

inline constexpr char kScanHeader[] = "abs_zeta,arg_zeta,q,n1,n2,e_down,e_up,squeezed";

// 12 significant digits, shortest form, locale independent.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline const char* format_bool(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  double re = 0.0;
  double im = 0.0;
  int q = 0;
  bool json = false;
};

struct AnalyzeRecord {
  PairParams params;
  SqueezeReport report;
  VarianceMatrix v;
  double solver_min = 0.0;   // least eigenvalue of V from the Jacobi solver
  bool self_check = false;   // |solver_min - e_down| <= 1e-10
};

inline AnalyzeRecord analyze_record(const PairParams& params) {
  AnalyzeRecord rec;
  rec.params = params;
  rec.report = analyze(params);
  rec.v = variance_matrix(params);
  rec.solver_min = sym_eigen(rec.v.mat).eigenvalues[0];
  rec.self_check = std::abs(rec.solver_min - rec.report.e_down) <= 1e-10;
  return rec;
}

inline void write_analyze(const AnalyzeRecord& rec, bool json, std::ostream& out) {
  const auto& r = rec.report;
  if (json) {
    nlohmann::ordered_json j;
    j["re"] = rec.params.zeta.re;
    j["im"] = rec.params.zeta.im;
    j["q"] = rec.params.q;
    j["n1"] = r.n1;
    j["n2"] = r.n2;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      auto row = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < 4; ++k) row.push_back(rec.v.mat(i, k));
      rows.push_back(row);
    }
    j["V"] = rows;
    j["e_down"] = r.e_down;
    j["e_up"] = r.e_up;
    j["theta"] = r.theta;
    j["phi"] = r.phi;
    j["psi_star"] = r.psi_star;
    j["squeezed"] = r.squeezed;
    j["self_check"] = rec.self_check;
    out << j.dump() << '\n';
    return;
  }
  out << "re: " << format_number(rec.params.zeta.re) << '\n'
      << "im: " << format_number(rec.params.zeta.im) << '\n'
      << "q: " << rec.params.q << '\n'
      << "n1: " << format_number(r.n1) << '\n'
      << "n2: " << format_number(r.n2) << '\n';
  for (std::size_t i = 0; i < 4; ++i) {
    out << "V" << i + 1 << ":";
    for (std::size_t k = 0; k < 4; ++k) out << ' ' << format_number(rec.v.mat(i, k));
    out << '\n';
  }
  out << "e_down: " << format_number(r.e_down) << '\n'
      << "e_up: " << format_number(r.e_up) << '\n'
      << "theta: " << format_number(r.theta) << '\n'
      << "phi: " << format_number(r.phi) << '\n'
      << "psi_star: " << format_number(r.psi_star) << '\n'
      << "squeezed: " << format_bool(r.squeezed) << '\n'
      << "self_check: " << format_bool(rec.self_check) << '\n';
}

// Maps library exceptions to exit codes; anything else propagates.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Overflow& e) {
    err << "overflow: " << e.what() << '\n';
    return kExitOverflow;
  }
}

inline int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PairParams p{{args.re, args.im}, args.q};
    validate(p);
    write_analyze(analyze_record(p), args.json, out);
    return int{kExitOk};
  });
}

// ---------------------------------------------------------------- scan

struct ScanSpec {
  std::vector<int> q_list;
  double abs_zeta_start = 0.0;
  double abs_zeta_stop = 1.0;
  int steps = 2;
  double arg_zeta = 0.0;
  // > 0: replace the fixed arg_zeta by this many equally spaced phases in
  // [0, 2 pi). Only useful for checking phase independence.
  int phase_sweep = 0;
  std::string output_path;
};

inline void validate(const ScanSpec& s) {
  if (s.q_list.empty()) throw DomainError("scan: q list is empty");
  for (int q : s.q_list)
    if (q < 0) throw DomainError("scan: q must be >= 0, got " + std::to_string(q));
  if (s.steps < 2) throw DomainError("scan: steps must be >= 2");
  if (!(s.abs_zeta_start >= 0.0)) throw DomainError("scan: zeta-min must be >= 0");
  if (!(s.abs_zeta_stop > s.abs_zeta_start)) throw DomainError("scan: zeta-max must exceed zeta-min");
  if (!std::isfinite(s.abs_zeta_stop) || !std::isfinite(s.arg_zeta))
    throw DomainError("scan: non-finite grid parameter");
  if (s.phase_sweep < 0) throw DomainError("scan: phase sweep count must be >= 0");
}

struct ScanRow {
  double abs_zeta = 0.0;
  double arg_zeta = 0.0;
  int q = 0;
  PhotonNumbers photons;
  Spectrum spectrum;
  bool squeezed = false;
};

inline std::vector<double> scan_grid(const ScanSpec& s) {
  std::vector<double> g(static_cast<std::size_t>(s.steps));
  const double step = (s.abs_zeta_stop - s.abs_zeta_start) / (s.steps - 1);
  for (int i = 0; i < s.steps; ++i) g[i] = s.abs_zeta_start + i * step;
  g.back() = s.abs_zeta_stop;
  return g;
}

// Rows ordered by (q ascending in list order after sorting, |zeta| ascending, phase).
inline std::vector<ScanRow> scan_rows(const ScanSpec& spec) {
  validate(spec);
  std::vector<int> qs = spec.q_list;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  std::vector<double> phases;
  if (spec.phase_sweep > 0)
    for (int k = 0; k < spec.phase_sweep; ++k)
      phases.push_back(2.0 * std::numbers::pi * k / spec.phase_sweep);
  else
    phases.push_back(spec.arg_zeta);

  std::vector<ScanRow> rows;
  for (int q : qs)
    for (double r : scan_grid(spec))
      for (double ph : phases) {
        const PairParams p{ComplexAmplitude::polar(r, ph), q};
        ScanRow row;
        row.abs_zeta = r;
        row.arg_zeta = ph;
        row.q = q;
        row.photons = photon_numbers(p);
        row.spectrum = analytic_spectrum(p);
        row.squeezed = row.spectrum.e_down < 0.5 - kSqueezeGuard;
        rows.push_back(row);
      }
  return rows;
}

inline void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
  out << kScanHeader << '\n';
  for (const auto& r : rows)
    out << format_number(r.abs_zeta) << ',' << format_number(r.arg_zeta) << ',' << r.q << ','
        << format_number(r.photons.n1) << ',' << format_number(r.photons.n2) << ','
        << format_number(r.spectrum.e_down) << ',' << format_number(r.spectrum.e_up) << ','
        << format_bool(r.squeezed) << '\n';
}

inline int cmd_scan(const ScanSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = scan_rows(spec);
    std::ostringstream buf;
    write_scan_csv(rows, buf);
    std::ofstream file(spec.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "io error: cannot open '" << spec.output_path << "' for writing\n";
      return int{kExitIo};
    }
    file << buf.str();
    file.flush();
    if (!file) {
      err << "io error: write to '" << spec.output_path << "' failed\n";
      return int{kExitIo};
    }
    out << "wrote " << rows.size() << " rows to " << spec.output_path << '\n';
    return int{kExitOk};
  });
}

// ---------------------------------------------------------------- verify

inline constexpr int kVerifyMaxQ = 6;
inline constexpr double kVerifyMaxZeta = 5.0;

struct VerifyTolerances {
  double variance = 1e-8;
  double photons = 1e-10;
  double first_moment = 1e-10;
  double spectrum = 1e-10;
  double uncertainty = -1e-10;
  double tail = 1e-12;
};

// |zeta| values for a verify run: the standard grid clipped at zeta_max,
// plus zeta_max itself.
inline std::vector<double> verify_amplitudes(double zeta_max) {
  std::vector<double> out;
  for (double r : {0.1, 0.5, 1.0, 2.0, 4.0})
    if (r <= zeta_max) out.push_back(r);
  if (out.empty() || out.back() < zeta_max) out.push_back(zeta_max);
  return out;
}

inline int cmd_verify(int q_max, double zeta_max, std::ostream& out, std::ostream& err) {
  if (q_max < 0 || q_max > kVerifyMaxQ || !(zeta_max > 0.0) || zeta_max > kVerifyMaxZeta) {
    err << "usage error: verify requires 0 <= --q-max <= " << kVerifyMaxQ
        << " and 0 < --zeta-max <= " << format_number(kVerifyMaxZeta) << '\n';
    return kExitDomain;
  }
  return guarded(err, [&] {
    const VerifyTolerances tol;
    const std::vector<double> amps = verify_amplitudes(zeta_max);
    const std::array<double, 4> phases{0.0, std::numbers::pi / 2.0, std::numbers::pi, 1.5 * std::numbers::pi};
    constexpr double kArgOffsetPhase = 0.7;

    double var_dev = 0.0, ph_dev = 0.0, first = 0.0, spec_dev = 0.0, unc_min = 1e300, tail = 0.0;
    std::ostringstream offsets;
    for (int q = 0; q <= q_max; ++q)
      for (double r : amps) {
        const PairParams base{{r, 0.0}, q};
        const QuadOps qo = build_quadrature_ops(q, default_truncation(base));
        for (double ph : phases) {
          const PairParams p{ComplexAmplitude::polar(r, ph), q};
          const OracleComparison cmp = compare_with_analytic(p, qo);
          var_dev = std::max(var_dev, cmp.variance_dev);
          ph_dev = std::max(ph_dev, cmp.photon_dev);
          first = std::max(first, cmp.first_moment);
          tail = std::max(tail, cmp.tail_bound);

          const VarianceMatrix v = variance_matrix(p);
          const auto eig = sym_eigen(v.mat).eigenvalues;
          const Spectrum s = analytic_spectrum(p);
          spec_dev = std::max({spec_dev, std::abs(eig[0] - s.e_down), std::abs(eig[1] - s.e_down),
                               std::abs(eig[2] - s.e_up), std::abs(eig[3] - s.e_up)});
          unc_min = std::min(unc_min, uncertainty_min_eigenvalue(v.mat));
        }
        const PairParams p{ComplexAmplitude::polar(r, kArgOffsetPhase), q};
        const LeadingPosition lp = leading_position_transform(p);
        double off = std::fmod(lp.psi_star - p.zeta.arg(), 2.0 * std::numbers::pi);
        if (off < 0.0) off += 2.0 * std::numbers::pi;
        offsets << "offset q=" << q << " abs_zeta=" << format_number(r)
                << " arg_zeta=" << format_number(p.zeta.arg()) << " psi_star_minus_arg="
                << format_number(off) << " heterodyne_gap=" << format_number(lp.gap()) << '\n';
      }

    bool ok = true;
    auto line = [&](const char* name, double value, double limit, bool pass) {
      ok = ok && pass;
      out << "check " << name << " value=" << format_number(value) << " limit=" << format_number(limit)
          << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    };
    line("variance_max_dev", var_dev, tol.variance, var_dev <= tol.variance);
    line("photon_max_dev", ph_dev, tol.photons, ph_dev <= tol.photons);
    line("first_moment_max", first, tol.first_moment, first <= tol.first_moment);
    line("truncation_tail_max", tail, tol.tail, tail < tol.tail);
    line("spectrum_max_dev", spec_dev, tol.spectrum, spec_dev <= tol.spectrum);
    line("uncertainty_min_eig", unc_min, tol.uncertainty, unc_min >= tol.uncertainty);
    out << offsets.str();
    out << "result " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? int{kExitOk} : int{kExitVerifyFailed};
  });
}

}  // namespace pcsq
