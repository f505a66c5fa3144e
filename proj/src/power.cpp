#include "cutsync/power.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cutsync/dynamics.hpp"
#include "cutsync/errors.hpp"
#include "cutsync/torus.hpp"

namespace cutsync {

namespace {

// Numeric table parsed from "mpc.<field> = [ ... ];" blocks.
using Table = std::vector<std::vector<double>>;

struct MatpowerData {
  double baseMVA = 0.0;
  std::map<std::string, Table> tables;
};

std::string strip_comment(const std::string& line) {
  auto pos = line.find('%');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

MatpowerData scan_matpower(std::istream& in) {
  MatpowerData data;
  std::string line;
  std::string current;  // table being filled, empty otherwise
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);

    if (current.empty()) {
      auto mpc = body.find("mpc.");
      if (mpc == std::string::npos) continue;
      auto eq = body.find('=', mpc);
      if (eq == std::string::npos) continue;
      std::string field = body.substr(mpc + 4, eq - mpc - 4);
      field.erase(std::remove_if(field.begin(), field.end(), ::isspace),
                  field.end());
      std::string rhs = body.substr(eq + 1);
      auto bracket = rhs.find('[');
      if (bracket == std::string::npos) {
        // Scalar assignment, e.g. baseMVA.
        if (field == "baseMVA") {
          std::string num = rhs;
          num.erase(std::remove(num.begin(), num.end(), ';'), num.end());
          try {
            data.baseMVA = std::stod(num);
          } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) +
                            ": cannot parse baseMVA value");
          }
        }
        continue;
      }
      current = field;
      data.tables[current] = {};
      body = rhs.substr(bracket + 1);
    }

    // Inside a table: rows are terminated by ';', the table by ']'.
    bool closing = false;
    auto close = body.find(']');
    if (close != std::string::npos) {
      closing = true;
      body = body.substr(0, close);
    }
    std::replace(body.begin(), body.end(), ';', ' ');
    std::istringstream row_in(body);
    std::vector<double> row;
    std::string tok;
    while (row_in >> tok) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(lineno) + ": bad number '" +
                        tok + "' in mpc." + current);
      }
    }
    if (!row.empty()) data.tables[current].push_back(row);
    if (closing) current.clear();
  }
  return data;
}

void check_connected(const PowerCase& pc) {
  std::map<int, int> index;
  for (size_t i = 0; i < pc.buses.size(); ++i) index[pc.buses[i].id] = int(i);
  std::vector<Edge> edges;
  for (const auto& br : pc.branches) {
    int a = index.at(br.from), b = index.at(br.to);
    if (a == b) continue;
    edges.push_back({a, b, 1.0});
  }
  // Duplicate (parallel) branches are legitimate here; dedupe for the check.
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(std::min(a.i, a.j), std::max(a.i, a.j)) <
           std::pair(std::min(b.i, b.j), std::max(b.i, b.j));
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return std::pair(std::min(a.i, a.j),
                                             std::max(a.i, a.j)) ==
                                   std::pair(std::min(b.i, b.j),
                                             std::max(b.i, b.j));
                          }),
              edges.end());
  try {
    Graph check(static_cast<int>(pc.buses.size()), edges);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Disconnected) {
      throw Error(ErrorCode::DisconnectedCase,
                  "case is disconnected after dropping out-of-service "
                  "branches");
    }
    throw;
  }
}

}  // namespace

PowerCase parse_matpower(std::istream& in, const std::string& name) {
  MatpowerData data = scan_matpower(in);
  if (!data.tables.count("bus") || !data.tables.count("branch") ||
      !data.tables.count("gen")) {
    throw Error(ErrorCode::ParseError,
                "case must define mpc.bus, mpc.gen and mpc.branch");
  }
  if (data.baseMVA <= 0.0) {
    throw Error(ErrorCode::ParseError, "missing or nonpositive mpc.baseMVA");
  }

  PowerCase pc;
  pc.name = name;
  pc.baseMVA = data.baseMVA;

  std::map<int, double> gen_P;   // summed in-service PG per bus
  std::map<int, double> gen_Vg;  // voltage setpoint per bus
  for (const auto& row : data.tables["gen"]) {
    if (row.size() < 10) {
      throw Error(ErrorCode::ParseError, "gen row needs at least 10 columns");
    }
    int bus = static_cast<int>(row[0]);
    bool on = row[7] > 0.0;
    if (!on) continue;
    gen_P[bus] += row[1];
    gen_Vg[bus] = row[5];
  }

  for (const auto& row : data.tables["bus"]) {
    if (row.size() < 13) {
      throw Error(ErrorCode::ParseError, "bus row needs at least 13 columns");
    }
    PowerBus b;
    b.id = static_cast<int>(row[0]);
    b.generator = gen_P.count(b.id) > 0;
    b.Vm = b.generator ? gen_Vg[b.id] : row[7];
    double pd = row[2];
    double pg = b.generator ? gen_P[b.id] : 0.0;
    b.P_nom = (pg - pd) / pc.baseMVA;
    if (!(b.Vm > 0.0)) {
      throw Error(ErrorCode::ParseError,
                  "bus " + std::to_string(b.id) +
                      " has nonpositive voltage magnitude");
    }
    pc.buses.push_back(b);
  }

  for (const auto& row : data.tables["branch"]) {
    if (row.size() < 13) {
      throw Error(ErrorCode::ParseError,
                  "branch row needs at least 13 columns");
    }
    bool in_service = row[10] > 0.0;
    if (!in_service) continue;
    PowerBranch br;
    br.from = static_cast<int>(row[0]);
    br.to = static_cast<int>(row[1]);
    br.x = row[3];
    if (!(br.x > 0.0)) {
      throw Error(ErrorCode::ParseError,
                  "branch " + std::to_string(br.from) + "-" +
                      std::to_string(br.to) +
                      " has nonpositive reactance");
    }
    pc.branches.push_back(br);
  }

  check_connected(pc);
  return pc;
}

PowerCase parse_case_json(std::istream& in, const std::string& name) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") +
                                           e.what());
  }
  PowerCase pc;
  pc.name = j.value("name", name);
  pc.baseMVA = j.value("baseMVA", 1.0);
  try {
    for (const auto& jb : j.at("buses")) {
      PowerBus b;
      b.id = jb.at("id").get<int>();
      std::string type = jb.at("type").get<std::string>();
      if (type != "generator" && type != "load") {
        throw Error(ErrorCode::ParseError,
                    "bus type must be 'generator' or 'load'");
      }
      b.generator = type == "generator";
      b.Vm = jb.at("Vm").get<double>();
      b.P_nom = jb.at("P").get<double>() / pc.baseMVA;
      if (!(b.Vm > 0.0)) {
        throw Error(ErrorCode::ParseError,
                    "bus " + std::to_string(b.id) +
                        " has nonpositive voltage magnitude");
      }
      pc.buses.push_back(b);
    }
    for (const auto& jb : j.at("branches")) {
      if (jb.value("status", 1) <= 0) continue;
      PowerBranch br;
      br.from = jb.at("from").get<int>();
      br.to = jb.at("to").get<int>();
      br.x = jb.at("x").get<double>();
      if (!(br.x > 0.0)) {
        throw Error(ErrorCode::ParseError, "branch has nonpositive reactance");
      }
      pc.branches.push_back(br);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError,
                std::string("case schema violation: ") + e.what());
  }
  check_connected(pc);
  return pc;
}

PowerCase parse_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open case file: " + path);
  }
  std::string name = path;
  auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  auto dot = name.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : name.substr(dot);
  if (dot != std::string::npos) name = name.substr(0, dot);
  if (ext == ".json") return parse_case_json(in, name);
  return parse_matpower(in, name);
}

OscillatorSystem lower_to_oscillators(const PowerCase& pc) {
  const int n = static_cast<int>(pc.buses.size());
  std::map<int, int> index;
  for (int i = 0; i < n; ++i) index[pc.buses[i].id] = i;

  // Parallel branches between the same pair add their susceptances.
  std::map<std::pair<int, int>, double> weight;
  for (const auto& br : pc.branches) {
    auto itf = index.find(br.from);
    auto itt = index.find(br.to);
    if (itf == index.end() || itt == index.end()) {
      throw Error(ErrorCode::ParseError,
                  "branch references unknown bus " +
                      std::to_string(itf == index.end() ? br.from : br.to));
    }
    int a = itf->second, b = itt->second;
    if (a > b) std::swap(a, b);
    double vm_a = pc.buses[a].Vm, vm_b = pc.buses[b].Vm;
    weight[{a, b}] += vm_a * vm_b / br.x;
  }

  std::vector<Edge> edges;
  edges.reserve(weight.size());
  for (const auto& [key, w] : weight) {
    edges.push_back({key.first, key.second, w});
  }

  Eigen::VectorXd p_nom(n);
  for (int i = 0; i < n; ++i) p_nom(i) = pc.buses[i].P_nom;
  return make_system(Graph(n, std::move(edges)), p_nom);
}

namespace {

// Equilibrium existence probe at injection scaling K, warm-started.
// Falls back to a short deterministic multistart so a failed warm start
// does not masquerade as nonexistence.
bool exists_at(const OscillatorSystem& base, double K,
               Eigen::VectorXd& warm, int& probes) {
  OscillatorSystem scaled{base.graph, K * base.omega, 0.0};
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(warm);
  starts.push_back(Eigen::VectorXd::Zero(base.graph.node_count()));
  std::mt19937_64 rng = make_rng(7, "critical_coupling_probe");
  for (int s = 0; s < 3; ++s) {
    Eigen::VectorXd x(base.graph.node_count());
    for (int i = 0; i < x.size(); ++i) x(i) = uniform_real(rng, -1.0, 1.0);
    starts.push_back(x);
  }
  for (const auto& x0 : starts) {
    ++probes;
    EquilibriumResult res = solve_newton(scaled, x0);
    if (res.status == SolveStatus::converged && res.residual < 1e-9 &&
        in_embedded_cohesive(wrap_angles(res.x_star), base.graph, M_PI_2)) {
      warm = res.x_star;
      return true;
    }
  }
  return false;
}

}  // namespace

CriticalCoupling critical_coupling(const PowerCase& pc, double bisect_tol,
                                   double K_hi_init) {
  if (bisect_tol <= 0.0 || K_hi_init <= 0.0) {
    throw Error(ErrorCode::ConfigInvalid,
                "bisection tolerance and initial bracket must be positive");
  }
  OscillatorSystem sys = lower_to_oscillators(pc);
  CriticalCoupling cc;
  if (sys.omega.lpNorm<Eigen::Infinity>() < 1e-12) {
    cc.unbounded = true;
    cc.K_c = std::numeric_limits<double>::infinity();
    return cc;
  }

  constexpr int kContinuationPoints = 64;
  constexpr double kBracketCap = 1e9;

  double K_hi = K_hi_init;
  while (true) {
    // Continuation sweep: walk K upward with warm starts and find the last
    // grid point where an equilibrium still exists.
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(sys.graph.node_count());
    double lo = 0.0, hi = -1.0;
    for (int j = 1; j <= kContinuationPoints; ++j) {
      double K = K_hi * j / kContinuationPoints;
      if (exists_at(sys, K, warm, cc.probes)) {
        lo = K;
      } else {
        hi = K;
        break;
      }
    }
    if (hi > 0.0) {
      // Bracketed: refine by bisection, keeping the warm start from the
      // existing side.
      Eigen::VectorXd warm_lo = warm;
      while (hi - lo > bisect_tol * hi) {
        double mid = 0.5 * (lo + hi);
        Eigen::VectorXd probe = warm_lo;
        if (exists_at(sys, mid, probe, cc.probes)) {
          lo = mid;
          warm_lo = probe;
        } else {
          hi = mid;
        }
      }
      cc.K_c = 0.5 * (lo + hi);
      return cc;
    }
    K_hi *= 2.0;
    if (K_hi > kBracketCap) {
      throw Error(ErrorCode::BracketNotFound,
                  "no failure of existence found below the bracket cap");
    }
  }
}

CriticalRatioReport test_thresholds(const PowerCase& pc, bool with_at1,
                                    const MafConfig& maf_cfg,
                                    double bisect_tol) {
  OscillatorSystem sys = lower_to_oscillators(pc);
  CriticalCoupling cc = critical_coupling(pc, bisect_tol);

  CriticalRatioReport rep;
  rep.case_name = pc.name;
  rep.K_c = cc.K_c;
  rep.K_c_unbounded = cc.unbounded;
  rep.gamma_domain = M_PI_2;
  rep.voltage_provenance = pc.voltage_provenance;

  LaplacianBundle lb = laplacian_bundle(sys.graph);
  CutsetProjection cp = cutset_projection(sys.graph);
  Eigen::VectorXd flow = edge_flow(sys);
  double flow_inf = flow.lpNorm<Eigen::Infinity>();
  double bt_omega = (sys.graph.incidence().transpose() * sys.omega).norm();

  auto add = [&](const std::string& test, bool rigorous, double K_T) {
    double ratio = cc.unbounded ? 0.0 : K_T / cc.K_c;
    rep.entries.push_back({test, rigorous, K_T, ratio});
  };

  // Every test's left-hand side is homogeneous of degree one in omega, so
  // the largest passing scaling is threshold / lhs at the nominal omega.
  add("T0", true, lb.lambda2() / bt_omega);
  add("T3", true, g_function(cp.norminf) / flow_inf);
  add("AT0", false, 1.0 / flow_inf);
  if (with_at1) {
    MafEstimate alpha =
        estimate_alpha(sys.graph, NormP::inf, M_PI_2, maf_cfg);
    add("AT1", false, M_PI_2 * alpha.numeric_estimate / flow_inf);
  }
  return rep;
}

}  // namespace cutsync
