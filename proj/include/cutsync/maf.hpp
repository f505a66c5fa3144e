#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "cutsync/graph.hpp"
#include "cutsync/linalg.hpp"

namespace cutsync {

// sin(x)/x with a series fallback near zero; sinc(0) = 1.
double sinc(double x);

// Lower bound sinc(gamma) on the 2-norm amplification factor, valid for
// unweighted graphs.
double alpha_lower_bound_2(double gamma);

// Lower bound (1 + sinc(gamma))/2 - ||P||_p (1 - sinc(gamma))/2, valid for
// any connected graph. May be nonpositive, in which case it is vacuous and
// reported as such rather than clamped.
double alpha_lower_bound_general(double gamma, double p_norm_of_P);

enum class MafMethod { theorem_2norm, theorem_general, multistart, bruteforce };

std::string maf_method_name(MafMethod m);

// Estimate of the minimum amplification factor
//   alpha_p(gamma) = min { ||P diag(sinc(y)) z||_p :
//                          y in cutset space with ||y||_p <= gamma,
//                          z in cutset space with ||z||_p = 1 }.
// numeric_estimate is the value at the best feasible point found, hence an
// upper bound on the true minimum; lower_bound comes from the theorems and
// the two are never conflated.
struct MafEstimate {
  NormP p;
  double gamma;
  double lower_bound;
  bool lower_bound_vacuous;
  double numeric_estimate;
  double value_at_zero;  // objective minimum over z at y = 0 (sanity cap)
  MafMethod method;
};

struct MafConfig {
  int starts = 100;
  int iters = 500;
  std::uint64_t seed = 42;
};

MafEstimate estimate_alpha(const Graph& g, NormP p, double gamma,
                           const MafConfig& cfg = {});

// Exhaustive grid search over the two (n-1)-dimensional coordinate blocks,
// skipping infeasible y points. Returns the grid minimum, an upper bound on
// alpha_p(gamma) that converges from above as the resolution grows. Only
// for n <= 4.
double brute_force_alpha(const Graph& g, NormP p, double gamma,
                         int points_per_dim = 41);

}  // namespace cutsync
