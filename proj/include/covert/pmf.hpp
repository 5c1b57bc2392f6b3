#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "covert/rng.hpp"

namespace covert {

// Discrete packet-size distribution. Sizes are in bits, strictly increasing.
// Immutable after construction; all derived quantities are cached.
class PacketSizePmf {
public:
    static constexpr double kProbTolerance = 1e-12;

    // Validating factory. Requires K >= 2, positive probabilities summing to
    // one within tolerance, strictly increasing sizes. Probabilities within
    // tolerance of one are renormalized exactly.
    static PacketSizePmf make(std::vector<uint32_t> support,
                              std::vector<double> probs);

    // Same validation except K = 1 is allowed. Degenerate rows occur in
    // history-conditional models and are skipped for insertion.
    static PacketSizePmf make_conditional(std::vector<uint32_t> support,
                                          std::vector<double> probs);

    const std::vector<uint32_t>& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }

    size_t k() const { return support_.size(); }
    uint32_t min_size() const { return support_.front(); }
    uint32_t max_size() const { return support_.back(); }
    double mean() const { return mean_; }
    double variance() const { return variance_; }
    bool unit_spaced() const { return unit_spaced_; }

    // Probability of a size; 0 if not in the support.
    double prob_of(uint32_t size) const;

    // Index of a size in the support, or -1.
    ptrdiff_t index_of(uint32_t size) const;

    // P(X <= size).
    double cdf(uint32_t size) const;

    uint32_t sample(CounterRng& rng) const;

    bool operator==(const PacketSizePmf& other) const {
        return support_ == other.support_ && probs_ == other.probs_;
    }

private:
    PacketSizePmf(std::vector<uint32_t> support, std::vector<double> probs,
                  bool allow_degenerate);

    std::vector<uint32_t> support_;
    std::vector<double> probs_;
    std::vector<double> cdf_;  // cumulative, cdf_.back() == 1
    double mean_ = 0.0;
    double variance_ = 0.0;
    bool unit_spaced_ = false;
};

inline PacketSizePmf make_pmf(std::vector<uint32_t> support,
                              std::vector<double> probs) {
    return PacketSizePmf::make(std::move(support), std::move(probs));
}

// Drops the smallest size and renormalizes; used to reduce an odd-K support
// to the even-K case (disregarded packets are never modified).
PacketSizePmf reduce_odd_support(const PacketSizePmf& pmf);

}  // namespace covert
