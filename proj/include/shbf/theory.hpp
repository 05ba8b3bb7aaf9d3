#pragma once

#include <array>
#include <cstdint>

/// Closed-form accuracy models for the shifting filters and their baselines.
/// All formulas use Bloom's approximation p = exp(-nk/m) for the fraction of
/// zero bits. Pass +infinity for `max_offset` to take the unbounded-window
/// limit.
namespace shbf::theory {

double zero_fraction(double m, double n, double k);

/// False positive rate of the standard Bloom filter, (1 - p)^k.
double fpr_bf(double m, double n, double k);

/// False positive rate of the shifting membership filter with k probed bits
/// (k/2 base positions and k/2 shifted partners), offsets in [1, max_offset - 1]:
///   (1 - p)^{k/2} (1 - p + p^2 / (max_offset - 1))^{k/2}
double fpr_shbf_m(double m, double n, double k, double max_offset);

/// Same model written in terms of a given zero fraction p.
double fpr_shbf_m_from_p(double p, double k, double max_offset);

/// FPR of the t-shift generalization: k / (t + 1) groups, each a base bit
/// plus t shifted bits drawn from a window of `window` - 1 positions.
double gen_fpr(double m, double n, double k, unsigned t, double window);
double gen_fpr_from_p(double p, double k, unsigned t, double window);
/// Probability that all t shifted bits of a group are set given the base bit is.
double gen_group_probability(double p, unsigned t, double window);

struct OptimalK {
  double real_k = 0;       ///< continuous minimizer
  unsigned even_k = 2;     ///< nearest even integer (>= 2)
  double min_fpr = 0;      ///< FPR at real_k
  double ratio = 0;        ///< real_k / (m / n)
};

/// Minimizes fpr_shbf_m over real k in [1, 4 m / n] by golden-section
/// search on log f (tolerance 1e-4 in k).
OptimalK optimal_k(double m, double n, double max_offset);

/// Standard BF optimum (m / n) ln 2.
double optimal_k_bf(double m, double n);

/// Outcome probabilities P1..P7 of an association query at load p' = 1/2.
std::array<double, 7> outcome_probabilities(unsigned k);

/// Probability of a clear answer: (1 - 0.5^k)^2 for the shifting
/// association filter, (2/3)(1 - 0.5^k) for a pair of independent BFs
/// under a query mix that hits the three regions equally.
double shbf_a_clear_probability(unsigned k);
double ibf_clear_probability(unsigned k);

/// Zero fraction of the association filter, (1 - 1/m)^{k n'}.
double association_zero_fraction(double m, double distinct, double k);

/// Probability that a given offset of a multiplicity query is a candidate,
/// f0 = (1 - exp(-kn/m))^k, where n counts distinct elements.
double multiplicity_f0(double m, double n, double k);

/// Correctness rate of a multiplicity query for an element of true
/// multiplicity j: j = 0 gives (1 - f0)^c, j >= 1 gives (1 - f0)^{j-1}.
double correctness_rate(double f0, unsigned c, unsigned j);
double correctness_rate(double m, double n, double k, unsigned c, unsigned j);

}  // namespace shbf::theory
