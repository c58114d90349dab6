#pragma once

#include <cstdint>
#include <vector>

#include "combench/rng.hpp"

namespace combench {

struct PowerLawFit {
  double exponent = 0.0;     // fitted alpha
  std::int64_t xmin = 0;     // fitted cutoff
  double ks_distance = 0.0;  // KS statistic of the fitted tail
  double p_value = 0.0;      // bootstrap p; NaN when bootstrapping is disabled
  int tail_count = 0;        // samples at or above xmin
  int sample_count = 0;
  bool reliable = false;     // tail_count >= 20
  bool degenerate = false;   // too little variation to fit anything
};

// Discrete maximum-likelihood power-law fit with the cutoff chosen by KS
// distance, restricted to cutoffs keeping at least 20 tail samples (when
// any such cutoff exists). The p-value comes from a semi-parametric
// bootstrap with `bootstrap_replicates` synthetic data sets: p is the
// fraction of replicates whose refitted KS distance reaches the observed
// one, so with 100 replicates p = 0 is representable.
PowerLawFit fit_power_law(const std::vector<std::int64_t>& samples,
                          int bootstrap_replicates = 100, std::uint64_t seed = 1);

// Hurwitz zeta, sum_{k>=0} (q + k)^-alpha, for alpha > 1 and q > 0.
double hurwitz_zeta(double alpha, double q);

// Exact inverse-CDF draw from the discrete power law p(x) ~ x^-alpha on
// x >= xmin.
std::int64_t sample_discrete_power_law(double alpha, std::int64_t xmin, Rng& rng);

}  // namespace combench
