#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "covert/pmf.hpp"

namespace covert {

enum class Hypothesis { kH0, kH1 };

struct DetectorVerdict {
    Hypothesis decision = Hypothesis::kH0;
    double statistic = 0.0;
    double threshold = 0.0;
};

// The converse test: decide H1 iff the average packet size exceeds
// mu + sqrt(sigma2 / (alpha * n)). Chebyshev guarantees P_FA <= alpha.
// Ties decide H0.
DetectorVerdict mean_threshold_detector(std::span<const uint32_t> sizes,
                                        double mu, double sigma2, double alpha);

// Optimal equal-prior test between f (H0) and f_mod (H1): decide H1 iff
// sum of ln(f_mod(x)/f(x)) is strictly positive. Throws on a size outside
// the support of f.
DetectorVerdict likelihood_ratio_detector(std::span<const uint32_t> sizes,
                                          const PacketSizePmf& f,
                                          const PacketSizePmf& f_mod);

struct DetectionReport {
    uint64_t trials = 0;
    double p_fa = 0.0;
    double p_md = 0.0;
    double p_e = 0.0;
    double ci_halfwidth = 0.0;  // 95% normal approximation on p_e
};

using SizeSource = std::function<std::vector<uint32_t>(uint64_t trial_seed)>;
using Detector = std::function<DetectorVerdict(std::span<const uint32_t>)>;

// Runs `trials` independent H0 and H1 streams through the detector.
// Per-trial seeds are counter-derived from `seed`, so the report does not
// depend on evaluation order.
DetectionReport estimate_errors(const Detector& detector,
                                const SizeSource& h0_source,
                                const SizeSource& h1_source, uint64_t trials,
                                uint64_t seed);

}  // namespace covert
