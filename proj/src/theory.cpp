#include "shbf/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shbf::theory {

namespace {

bool unbounded(double window) { return std::isinf(window); }

}  // namespace

double zero_fraction(double m, double n, double k) {
  if (m <= 0) throw std::invalid_argument("m must be positive");
  return std::exp(-n * k / m);
}

double fpr_bf(double m, double n, double k) { return std::pow(1.0 - zero_fraction(m, n, k), k); }

double fpr_shbf_m_from_p(double p, double k, double max_offset) {
  const double q = 1.0 - p;
  const double spread = unbounded(max_offset) ? 0.0 : p * p / (max_offset - 1.0);
  return std::pow(q, k / 2.0) * std::pow(q + spread, k / 2.0);
}

double fpr_shbf_m(double m, double n, double k, double max_offset) {
  if (!(max_offset > 1.0)) throw std::invalid_argument("max offset must exceed 1");
  return fpr_shbf_m_from_p(zero_fraction(m, n, k), k, max_offset);
}

double gen_group_probability(double p, unsigned t, double window) {
  if (t == 0) throw std::invalid_argument("t must be positive");
  const double set = 1.0 - p;
  // lambda1 + lambda2 = t/(w-1) + (1 - t/(w-1)) (1 - p) = 1 - (w-1-t)/(w-1) p
  const double lambda = unbounded(window) ? set : 1.0 - (window - 1.0 - t) / (window - 1.0) * p;
  // (a^t - b^t) / (a - b) as sum_{j<t} a^{t-1-j} b^j: exact, and finite at a == b.
  double ratio = 0.0;
  for (unsigned j = 0; j < t; ++j) {
    ratio += std::pow(set, static_cast<double>(t - 1 - j)) * std::pow(lambda, static_cast<double>(j));
  }
  return set * set * ratio / t + p * std::pow(lambda, static_cast<double>(t));
}

double gen_fpr_from_p(double p, double k, unsigned t, double window) {
  const double groups = k / (t + 1.0);
  return std::pow(1.0 - p, groups) * std::pow(gen_group_probability(p, t, window), groups);
}

double gen_fpr(double m, double n, double k, unsigned t, double window) {
  return gen_fpr_from_p(zero_fraction(m, n, k), k, t, window);
}

OptimalK optimal_k(double m, double n, double max_offset) {
  if (m <= 0 || n <= 0) throw std::invalid_argument("m and n must be positive");
  const auto objective = [&](double k) { return std::log(fpr_shbf_m(m, n, k, max_offset)); };

  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 1.0;
  double hi = std::max(2.0, 4.0 * m / n);
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    }
  }

  OptimalK out;
  out.real_k = 0.5 * (lo + hi);
  out.min_fpr = fpr_shbf_m(m, n, out.real_k, max_offset);
  out.ratio = out.real_k / (m / n);
  out.even_k = std::max(2u, 2u * static_cast<unsigned>(std::lround(out.real_k / 2.0)));
  return out;
}

double optimal_k_bf(double m, double n) { return m / n * std::log(2.0); }

std::array<double, 7> outcome_probabilities(unsigned k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const double miss = std::pow(0.5, static_cast<double>(k));
  const double clear = (1.0 - miss) * (1.0 - miss);
  const double partial = miss * (1.0 - miss);
  const double none = miss * miss;
  return {clear, clear, clear, partial, partial, partial, none};
}

double shbf_a_clear_probability(unsigned k) { return outcome_probabilities(k)[0]; }

double ibf_clear_probability(unsigned k) {
  return 2.0 / 3.0 * (1.0 - std::pow(0.5, static_cast<double>(k)));
}

double association_zero_fraction(double m, double distinct, double k) {
  return std::pow(1.0 - 1.0 / m, k * distinct);
}

double multiplicity_f0(double m, double n, double k) {
  return std::pow(1.0 - std::exp(-k * n / m), k);
}

double correctness_rate(double f0, unsigned c, unsigned j) {
  if (j > c) throw std::invalid_argument("multiplicity exceeds the maximum count");
  if (j == 0) return std::pow(1.0 - f0, static_cast<double>(c));
  return std::pow(1.0 - f0, static_cast<double>(j - 1));
}

double correctness_rate(double m, double n, double k, unsigned c, unsigned j) {
  return correctness_rate(multiplicity_f0(m, n, k), c, j);
}

}  // namespace shbf::theory
