#include "covert/detectors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "covert/rng.hpp"

namespace covert {

DetectorVerdict mean_threshold_detector(std::span<const uint32_t> sizes,
                                        double mu, double sigma2,
                                        double alpha) {
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("mean_threshold_detector: sigma2 must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("mean_threshold_detector: alpha must be in (0, 1)");
    if (sizes.empty())
        throw std::invalid_argument("mean_threshold_detector: empty stream");
    double total = 0.0;
    for (uint32_t s : sizes) total += s;
    DetectorVerdict v;
    v.statistic = total / static_cast<double>(sizes.size());
    v.threshold =
        mu + std::sqrt(sigma2 / (alpha * static_cast<double>(sizes.size())));
    v.decision =
        v.statistic > v.threshold ? Hypothesis::kH1 : Hypothesis::kH0;
    return v;
}

DetectorVerdict likelihood_ratio_detector(std::span<const uint32_t> sizes,
                                          const PacketSizePmf& f,
                                          const PacketSizePmf& f_mod) {
    // Per-support log ratios, indexed by position in f's support.
    std::vector<double> log_ratio(f.k());
    for (size_t i = 0; i < f.k(); ++i) {
        double q = f_mod.prob_of(f.support()[i]);
        log_ratio[i] = q > 0.0 ? std::log(q / f.probs()[i])
                               : -std::numeric_limits<double>::infinity();
    }
    double stat = 0.0;
    for (uint32_t s : sizes) {
        ptrdiff_t idx = f.index_of(s);
        if (idx < 0)
            throw std::out_of_range(
                "likelihood_ratio_detector: size " + std::to_string(s) +
                " outside the support of f");
        stat += log_ratio[static_cast<size_t>(idx)];
    }
    DetectorVerdict v;
    v.statistic = stat;
    v.threshold = 0.0;
    v.decision = stat > 0.0 ? Hypothesis::kH1 : Hypothesis::kH0;
    return v;
}

DetectionReport estimate_errors(const Detector& detector,
                                const SizeSource& h0_source,
                                const SizeSource& h1_source, uint64_t trials,
                                uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("estimate_errors: trials must be >= 1");
    uint64_t false_alarms = 0;
    uint64_t missed = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        uint64_t s0 = CounterRng(seed, rng_stream::kTrial, 2 * t).next_u64();
        uint64_t s1 = CounterRng(seed, rng_stream::kTrial, 2 * t + 1).next_u64();
        if (detector(h0_source(s0)).decision == Hypothesis::kH1) ++false_alarms;
        if (detector(h1_source(s1)).decision == Hypothesis::kH0) ++missed;
    }
    DetectionReport report;
    report.trials = trials;
    report.p_fa = static_cast<double>(false_alarms) / trials;
    report.p_md = static_cast<double>(missed) / trials;
    report.p_e = 0.5 * (report.p_fa + report.p_md);
    double var = (report.p_fa * (1.0 - report.p_fa) +
                  report.p_md * (1.0 - report.p_md)) /
                 (4.0 * static_cast<double>(trials));
    report.ci_halfwidth = 1.96 * std::sqrt(var);
    return report;
}

}  // namespace covert
