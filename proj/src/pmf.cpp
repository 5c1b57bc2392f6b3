#include "covert/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covert {

PacketSizePmf::PacketSizePmf(std::vector<uint32_t> support,
                             std::vector<double> probs, bool allow_degenerate)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.size() != probs_.size())
        throw std::invalid_argument("pmf: support and probs length mismatch");
    if (support_.empty())
        throw std::invalid_argument("pmf: empty support");
    if (!allow_degenerate && support_.size() < 2)
        throw std::invalid_argument("pmf: support must have at least two sizes");

    for (size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] == 0)
            throw std::invalid_argument("pmf: packet size must be positive");
        if (i > 0 && support_[i] <= support_[i - 1])
            throw std::invalid_argument("pmf: support must be strictly increasing");
        if (!(probs_[i] > 0.0))
            throw std::invalid_argument("pmf: probabilities must be positive");
    }

    double sum = 0.0;
    for (double p : probs_) sum += p;
    if (std::abs(sum - 1.0) > kProbTolerance)
        throw std::invalid_argument("pmf: probabilities sum to " +
                                    std::to_string(sum) + ", expected 1");
    for (double& p : probs_) p /= sum;

    cdf_.resize(probs_.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs_.size(); ++i) {
        acc += probs_[i];
        cdf_[i] = acc;
        mean_ += probs_[i] * support_[i];
    }
    cdf_.back() = 1.0;
    for (size_t i = 0; i < probs_.size(); ++i) {
        double d = support_[i] - mean_;
        variance_ += probs_[i] * d * d;
    }

    unit_spaced_ = true;
    for (size_t i = 1; i < support_.size(); ++i)
        if (support_[i] - support_[i - 1] != 1) unit_spaced_ = false;
    if (support_.size() < 2) unit_spaced_ = false;
}

PacketSizePmf PacketSizePmf::make(std::vector<uint32_t> support,
                                  std::vector<double> probs) {
    return PacketSizePmf(std::move(support), std::move(probs), false);
}

PacketSizePmf PacketSizePmf::make_conditional(std::vector<uint32_t> support,
                                              std::vector<double> probs) {
    return PacketSizePmf(std::move(support), std::move(probs), true);
}

ptrdiff_t PacketSizePmf::index_of(uint32_t size) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), size);
    if (it == support_.end() || *it != size) return -1;
    return it - support_.begin();
}

double PacketSizePmf::prob_of(uint32_t size) const {
    ptrdiff_t i = index_of(size);
    return i < 0 ? 0.0 : probs_[static_cast<size_t>(i)];
}

double PacketSizePmf::cdf(uint32_t size) const {
    auto it = std::upper_bound(support_.begin(), support_.end(), size);
    if (it == support_.begin()) return 0.0;
    return cdf_[static_cast<size_t>(it - support_.begin()) - 1];
}

uint32_t PacketSizePmf::sample(CounterRng& rng) const {
    double u = rng.next_unit();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return support_[static_cast<size_t>(it - cdf_.begin())];
}

PacketSizePmf reduce_odd_support(const PacketSizePmf& pmf) {
    if (pmf.k() % 2 == 0) return pmf;
    if (pmf.k() < 3)
        throw std::invalid_argument("reduce_odd_support: nothing left after reduction");
    std::vector<uint32_t> support(pmf.support().begin() + 1, pmf.support().end());
    std::vector<double> probs(pmf.probs().begin() + 1, pmf.probs().end());
    double rest = 1.0 - pmf.probs().front();
    for (double& p : probs) p /= rest;
    return PacketSizePmf::make(std::move(support), std::move(probs));
}

}  // namespace covert
