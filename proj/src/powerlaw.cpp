#include "combench/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace combench {

namespace {

constexpr double kAlphaLow = 1.000001;
constexpr double kAlphaHigh = 25.0;
constexpr int kMinTail = 20;

double log_likelihood(double alpha, std::int64_t xmin, int tail_count, double tail_logsum) {
  return -static_cast<double>(tail_count) * std::log(hurwitz_zeta(alpha, static_cast<double>(xmin))) -
         alpha * tail_logsum;
}

// The log likelihood is concave in alpha, so a ternary search suffices.
double mle_alpha(std::int64_t xmin, int tail_count, double tail_logsum) {
  double lo = kAlphaLow;
  double hi = kAlphaHigh;
  for (int iter = 0; iter < 64; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (log_likelihood(m1, xmin, tail_count, tail_logsum) <
        log_likelihood(m2, xmin, tail_count, tail_logsum)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return (lo + hi) / 2.0;
}

// Evaluates zeta(alpha, x) along increasing integer x, sliding via
// zeta(alpha, x + 1) = zeta(alpha, x) - x^-alpha and falling back to a
// fresh expansion when the jump is long.
class ZetaWalker {
public:
  ZetaWalker(double alpha, std::int64_t start)
      : alpha_(alpha), x_(start), value_(hurwitz_zeta(alpha, static_cast<double>(start))) {}

  double at(std::int64_t x) {
    if (x < x_) throw std::logic_error("ZetaWalker cannot move backward");
    if (x - x_ > 64) {
      x_ = x;
      value_ = hurwitz_zeta(alpha_, static_cast<double>(x));
      return value_;
    }
    while (x_ < x) {
      value_ -= std::pow(static_cast<double>(x_), -alpha_);
      ++x_;
    }
    return value_;
  }

private:
  double alpha_;
  std::int64_t x_;
  double value_;
};

// KS distance between the tail's empirical CDF and the fitted model. The
// supremum over integers is attained at a distinct observed value or one
// step below it, so only those points are evaluated.
double ks_statistic(double alpha, std::int64_t xmin, const std::int64_t* tail, int tail_count) {
  const double z0 = hurwitz_zeta(alpha, static_cast<double>(xmin));
  ZetaWalker walker(alpha, xmin);
  const auto cdf = [&](std::int64_t x) { return 1.0 - walker.at(x + 1) / z0; };

  double d = 0.0;
  double prev_ecdf = 0.0;
  int i = 0;
  while (i < tail_count) {
    int j = i;
    while (j < tail_count && tail[j] == tail[i]) ++j;
    const std::int64_t v = tail[i];
    if (v > xmin) {
      d = std::max(d, std::abs(prev_ecdf - cdf(v - 1)));
    }
    const double ecdf = static_cast<double>(j) / static_cast<double>(tail_count);
    d = std::max(d, std::abs(ecdf - cdf(v)));
    prev_ecdf = ecdf;
    i = j;
  }
  return d;
}

struct TailFit {
  double alpha = 0.0;
  std::int64_t xmin = 0;
  double ks = std::numeric_limits<double>::infinity();
  int tail_count = 0;
  bool reliable = false;
  bool degenerate = true;
};

// Scans cutoff candidates over the sorted sample, preferring cutoffs that
// keep at least kMinTail samples and, among those, the smallest KS.
TailFit fit_tail(const std::vector<std::int64_t>& sorted) {
  const int n = static_cast<int>(sorted.size());
  std::vector<double> suffix_logsum(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    suffix_logsum[i] = suffix_logsum[i + 1] + std::log(static_cast<double>(sorted[i]));
  }

  // First index of each distinct value.
  std::vector<int> starts;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || sorted[i] != sorted[i - 1]) starts.push_back(i);
  }

  const auto distinct_in_tail = [&](int start) {
    const auto first = sorted[start];
    return sorted[n - 1] != first;
  };

  // A candidate must leave at least two distinct tail values, otherwise the
  // likelihood has no interior maximum.
  std::vector<int> candidates;
  for (const int start : starts) {
    if (n - start >= kMinTail && distinct_in_tail(start)) candidates.push_back(start);
  }
  bool reliable = true;
  if (candidates.empty()) {
    reliable = false;
    for (const int start : starts) {
      if (distinct_in_tail(start)) candidates.push_back(start);
    }
  }

  TailFit best;
  if (candidates.empty()) return best;  // constant data
  for (const int start : candidates) {
    const std::int64_t xmin = sorted[start];
    const int tail_count = n - start;
    const double alpha = mle_alpha(xmin, tail_count, suffix_logsum[start]);
    const double ks = ks_statistic(alpha, xmin, sorted.data() + start, tail_count);
    if (ks < best.ks) {
      best.alpha = alpha;
      best.xmin = xmin;
      best.ks = ks;
      best.tail_count = tail_count;
      best.degenerate = false;
    }
  }
  best.reliable = reliable && best.tail_count >= kMinTail;
  return best;
}

// Tabulated inverse-CDF sampler for a fixed fitted model, used by the
// bootstrap where millions of draws share the same parameters.
class TailSampler {
public:
  TailSampler(double alpha, std::int64_t xmin) : alpha_(alpha), xmin_(xmin) {
    const double z0 = hurwitz_zeta(alpha, static_cast<double>(xmin));
    double tail = 1.0;  // P(X >= xmin + i) / normalization
    tail_prob_.reserve(4096);
    tail_prob_.push_back(tail);
    for (int i = 0; i < 4095; ++i) {
      tail -= std::pow(static_cast<double>(xmin + i), -alpha) / z0;
      if (tail <= 1e-13) break;
      tail_prob_.push_back(tail);
    }
  }

  std::int64_t draw(Rng& rng) const {
    const double target = 1.0 - rng.next_double();  // in (0, 1]
    // smallest i with P(X >= xmin + i + 1) <= target
    if (tail_prob_.back() > target) {
      return sample_discrete_power_law_from(alpha_, xmin_ + static_cast<std::int64_t>(tail_prob_.size()) - 1,
                                            target / tail_prob_.back());
    }
    int lo = 0;
    int hi = static_cast<int>(tail_prob_.size()) - 1;
    // invariant: tail_prob_[lo] > target >= tail_prob_[hi] ... hi works
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (mid + 1 < static_cast<int>(tail_prob_.size()) && tail_prob_[mid + 1] > target) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return xmin_ + lo;
  }

  // Inverse CDF by bracketing with fresh zeta evaluations; `target` is the
  // desired conditional tail probability relative to `xmin`.
  static std::int64_t sample_discrete_power_law_from(double alpha, std::int64_t xmin,
                                                     double target) {
    const double z0 = hurwitz_zeta(alpha, static_cast<double>(xmin));
    const auto tail_at = [&](std::int64_t x) {
      return hurwitz_zeta(alpha, static_cast<double>(x)) / z0;
    };
    // find hi with tail(hi + 1) <= target
    std::int64_t span = 1;
    std::int64_t hi = xmin;
    constexpr std::int64_t kCap = std::int64_t{1} << 40;
    while (tail_at(hi + 1) > target && hi < kCap) {
      hi = xmin + span;
      span *= 2;
    }
    std::int64_t lo = xmin;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (tail_at(mid + 1) > target) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

private:
  double alpha_;
  std::int64_t xmin_;
  std::vector<double> tail_prob_;
};

}  // namespace

double hurwitz_zeta(double alpha, double q) {
  if (alpha <= 1.0) throw std::invalid_argument("hurwitz_zeta: alpha must exceed 1");
  if (q <= 0.0) throw std::invalid_argument("hurwitz_zeta: q must be positive");
  // Euler-Maclaurin after shifting the argument past 30; the dropped term
  // is O(z^-alpha-7), far below double precision here.
  double sum = 0.0;
  double z = q;
  while (z < 30.0) {
    sum += std::pow(z, -alpha);
    z += 1.0;
  }
  sum += std::pow(z, 1.0 - alpha) / (alpha - 1.0);
  sum += 0.5 * std::pow(z, -alpha);
  sum += alpha * std::pow(z, -alpha - 1.0) / 12.0;
  sum -= alpha * (alpha + 1.0) * (alpha + 2.0) * std::pow(z, -alpha - 3.0) / 720.0;
  sum += alpha * (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0) * (alpha + 4.0) *
         std::pow(z, -alpha - 5.0) / 30240.0;
  return sum;
}

std::int64_t sample_discrete_power_law(double alpha, std::int64_t xmin, Rng& rng) {
  if (alpha <= 1.0) throw std::invalid_argument("sample_discrete_power_law: alpha must exceed 1");
  if (xmin < 1) throw std::invalid_argument("sample_discrete_power_law: xmin must be >= 1");
  const double target = 1.0 - rng.next_double();
  return TailSampler::sample_discrete_power_law_from(alpha, xmin, target);
}

PowerLawFit fit_power_law(const std::vector<std::int64_t>& samples, int bootstrap_replicates,
                          std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("fit_power_law: no samples");
  for (const auto value : samples) {
    if (value < 1) throw std::invalid_argument("fit_power_law: samples must be >= 1");
  }

  std::vector<std::int64_t> sorted = samples;
  std::sort(sorted.begin(), sorted.end());

  PowerLawFit fit;
  fit.sample_count = static_cast<int>(samples.size());
  fit.p_value = std::numeric_limits<double>::quiet_NaN();

  const TailFit observed = fit_tail(sorted);
  if (observed.degenerate) {
    fit.degenerate = true;
    fit.exponent = std::numeric_limits<double>::quiet_NaN();
    fit.ks_distance = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  fit.exponent = observed.alpha;
  fit.xmin = observed.xmin;
  fit.ks_distance = observed.ks;
  fit.tail_count = observed.tail_count;
  fit.reliable = observed.reliable;

  if (bootstrap_replicates <= 0) return fit;

  // Semi-parametric bootstrap: below the cutoff resample the observed body,
  // at or above it draw from the fitted law, then refit from scratch.
  std::vector<std::int64_t> body;
  for (const auto value : sorted) {
    if (value < observed.xmin) body.push_back(value);
  }
  const double tail_fraction =
      static_cast<double>(observed.tail_count) / static_cast<double>(sorted.size());
  const TailSampler sampler(observed.alpha, observed.xmin);

  Rng rng(seed);
  int reached = 0;
  std::vector<std::int64_t> synth(sorted.size());
  for (int rep = 0; rep < bootstrap_replicates; ++rep) {
    for (auto& value : synth) {
      if (body.empty() || rng.next_double() < tail_fraction) {
        value = sampler.draw(rng);
      } else {
        value = body[rng.below(body.size())];
      }
    }
    std::sort(synth.begin(), synth.end());
    const TailFit refit = fit_tail(synth);
    // A degenerate replicate cannot beat the data; count it as extreme.
    if (refit.degenerate || refit.ks >= observed.ks) ++reached;
  }
  fit.p_value = static_cast<double>(reached) / static_cast<double>(bootstrap_replicates);
  return fit;
}

}  // namespace combench
