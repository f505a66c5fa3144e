#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cutsync/maf.hpp"
#include "cutsync/sync_tests.hpp"

namespace cutsync {

struct PowerBus {
  int id;           // external bus number from the case file
  bool generator;   // has an in-service generator attached
  double Vm;        // voltage magnitude p.u.; generator setpoint when present
  double P_nom;     // net active injection p.u. (generation - demand)
};

struct PowerBranch {
  int from;   // external bus numbers
  int to;
  double x;   // series reactance p.u.; parallel branches are merged later
};

// Lossless snapshot of a power network: voltages and injections straight
// from the case file (no power-flow solve), out-of-service branches dropped.
struct PowerCase {
  std::string name;
  double baseMVA = 1.0;
  std::vector<PowerBus> buses;
  std::vector<PowerBranch> branches;
  std::string voltage_provenance = "case_file";
};

// Reads a MATPOWER .m case or the native JSON schema, selected by file
// extension.
PowerCase parse_case(const std::string& path);
PowerCase parse_matpower(std::istream& in, const std::string& name);
PowerCase parse_case_json(std::istream& in, const std::string& name);

// Kuramoto lowering: edge weight Vm_i * Vm_j / x_ij between connected buses
// (susceptance magnitude of a lossless line, parallel branches adding),
// natural frequencies the normalized injections.
OscillatorSystem lower_to_oscillators(const PowerCase& pc);

struct CriticalCoupling {
  double K_c = 0.0;
  bool unbounded = false;  // zero heterogeneity: every scaling synchronizes
  int probes = 0;          // equilibrium solves spent
};

// Largest uniform injection scaling K for which an equilibrium exists in
// the embedded-cohesive set at pi/2: coarse continuation with warm starts,
// then bisection to the requested relative width.
CriticalCoupling critical_coupling(const PowerCase& pc,
                                   double bisect_tol = 1e-4,
                                   double K_hi_init = 2.0);

struct CriticalRatioEntry {
  std::string test;
  bool rigorous;
  double K_T;
  double ratio;  // K_T / K_c
};

struct CriticalRatioReport {
  std::string case_name;
  double K_c;
  bool K_c_unbounded;
  double gamma_domain;  // pi/2
  std::string voltage_provenance;
  std::vector<CriticalRatioEntry> entries;
};

// Per-test largest passing scaling K_T (closed form by homogeneity of every
// test's left-hand side in omega) and the ratios K_T / K_c.
CriticalRatioReport test_thresholds(const PowerCase& pc,
                                    bool with_at1 = false,
                                    const MafConfig& maf_cfg = {},
                                    double bisect_tol = 1e-4);

}  // namespace cutsync
