// pcsq: squeezing analysis of two-mode pair coherent states.
//
//   pcsq analyze --re R --im I --q Q [--json]
//   pcsq scan --q 0,1,2,3 --zeta-min A --zeta-max B --steps N [--phase P] --out FILE
//   pcsq verify --q-max Q --zeta-max Z

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcsq/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Variance-matrix squeezing analysis of pair coherent states"};
  app.require_subcommand(1);

  pcsq::AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Single-point report for |zeta, q>");
  an->add_option("--re", analyze.re, "Re zeta")->required();
  an->add_option("--im", analyze.im, "Im zeta")->required();
  an->add_option("--q", analyze.q, "photon-number difference q >= 0")->required();
  an->add_flag("--json", analyze.json, "emit one JSON object");

  pcsq::ScanSpec scan;
  auto* sc = app.add_subcommand("scan", "Least eigenvalue over a |zeta| grid, CSV output");
  sc->add_option("--q", scan.q_list, "comma-separated q values")->required()->delimiter(',');
  sc->add_option("--zeta-min", scan.abs_zeta_start, "first |zeta|")->required();
  sc->add_option("--zeta-max", scan.abs_zeta_stop, "last |zeta|")->required();
  sc->add_option("--steps", scan.steps, "number of grid points (>= 2)")->required();
  sc->add_option("--phase", scan.arg_zeta, "arg zeta in radians (default 0)");
  sc->add_option("--phase-sweep", scan.phase_sweep,
                 "emit this many equally spaced phases per grid point instead of --phase");
  sc->add_option("--out", scan.output_path, "output CSV path")->required();

  int q_max = 0;
  double zeta_max = 0.0;
  auto* ve = app.add_subcommand("verify", "Cross-check closed forms against the Fock-space oracle");
  ve->add_option("--q-max", q_max, "largest q (<= 6)")->required();
  ve->add_option("--zeta-max", zeta_max, "largest |zeta| (<= 5)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pcsq::kExitDomain;
  }

  if (*an) return pcsq::cmd_analyze(analyze, std::cout, std::cerr);
  if (*sc) return pcsq::cmd_scan(scan, std::cout, std::cerr);
  return pcsq::cmd_verify(q_max, zeta_max, std::cout, std::cerr);
}
