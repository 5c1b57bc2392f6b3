#pragma once

#include <cstdint>
#include <utility>

#include "covert/dependent_model.hpp"
#include "covert/pmf.hpp"

namespace covert {

// Scale constant and per-packet selection probability tying a covertness
// target epsilon to a stream length: p = epsilon / (scale * sqrt(n)).
struct CovertnessBudget {
    double epsilon = 0.0;
    uint64_t n = 0;
    double p = 0.0;
    double scale_constant = 1.0;  // xi for i.i.d. models, eta for dependent
};

enum class EtaMode {
    kLiteral,       // ratio of largest to smallest reachable size per step
    kConservative,  // pmf-ratio analog of xi over every reachable row
};

// Worst-case likelihood ratio between a size and its lower counterpart under
// the half-support index shift. Requires even K; reduce odd supports first.
// Returns (xi0, xi) with xi = max(1, xi0).
std::pair<double, double> xi_constant(const PacketSizePmf& pmf);

// Dependent-model analog of xi. Literal mode takes the max over steps of
// (max reachable size) / (min reachable size); conservative mode takes the
// max of the per-row pmf ratio over every reachable non-degenerate row.
// Returns (eta0, eta) with eta = max(1, eta0).
std::pair<double, double> eta_constant(const DependentSizeModel& model,
                                       uint64_t n, EtaMode mode);

// Post-insertion size pmf on the same support: the lower half loses the
// selected mass, each upper-half size gains the mass of its lower
// counterpart. Requires even K and 0 <= p < 1.
PacketSizePmf modified_pmf(const PacketSizePmf& pmf, double p);

// Odd-K-aware variant over the full support: the disregarded smallest size
// keeps its mass, the rest is the even-K modification scaled into place.
PacketSizePmf insertion_modified_pmf(const PacketSizePmf& pmf, double p);

// Relative entropy sum q(x) ln(q(x)/f(x)) in nats. Returns +infinity when q
// puts mass outside the support of f.
double kl_divergence(const PacketSizePmf& q, const PacketSizePmf& f);

// max(0, 1/2 - sqrt(total_kl / 2)): the hypothesis-testing floor on the
// warden's error probability.
double covertness_lower_bound(double total_kl);

struct ThroughputBound {
    double expected_bits = 0.0;        // E[n_c] over the whole stream
    double half_mean_threshold = 0.0;  // the whp lower threshold E[n_c]/2
};

// Expected inserted bits n * p * sum over lower-half sizes of
// f(s) * (target(s) - s); for unit-spaced supports this is L * m * p * n.
// Odd K is reduced internally.
ThroughputBound expected_throughput(const PacketSizePmf& pmf,
                                    const CovertnessBudget& budget);

struct DependentThroughputBound {
    double c_n = 0.0;           // expected count of steps with K_i >= 2
    double expected_bits = 0.0; // the lower bound p' * c(n)
};

// Exact forward recursion over the history distribution of the model.
DependentThroughputBound dependent_throughput_bound(
    const DependentSizeModel& model, const CovertnessBudget& budget,
    uint64_t n);

// Exact KL between the post-insertion joint (size, flag) conditional flag
// distribution and Bernoulli(1/2), summed over the upper half with
// post-insertion size weights. Also checks the closed-form bound
// (xi0 * p / (1 - p))^2 and throws if it were violated. Requires even K.
double flag_bit_kl(const PacketSizePmf& pmf, double p);

// Scalar inequality behind the flag-bit bound:
// (1-r)/2 ln(1-r) + (1+r)/2 ln(1+r) for r in [0, 1).
double flag_bit_scalar(double r);

}  // namespace covert
