#include "covert/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace covert {

std::pair<double, double> xi_constant(const PacketSizePmf& pmf) {
    if (pmf.k() % 2 != 0)
        throw std::invalid_argument("xi_constant: odd K must be reduced first");
    const auto& f = pmf.probs();
    size_t half = pmf.k() / 2;
    double xi0 = 0.0;
    for (size_t i = half; i < pmf.k(); ++i)
        xi0 = std::max(xi0, f[i - half] / f[i]);
    return {xi0, std::max(1.0, xi0)};
}

std::pair<double, double> eta_constant(const DependentSizeModel& model,
                                       uint64_t n, EtaMode mode) {
    size_t max_steps = static_cast<size_t>(
        std::min<uint64_t>(n, model.order() + 64));
    double eta0 = 0.0;
    bool found = false;
    if (mode == EtaMode::kLiteral) {
        for (const auto& step : model.reachable_histories(max_steps)) {
            uint32_t lo = std::numeric_limits<uint32_t>::max();
            uint32_t hi = 0;
            bool nondegenerate = false;
            for (const auto& h : step) {
                const PacketSizePmf& r = model.row(h);
                lo = std::min(lo, r.min_size());
                hi = std::max(hi, r.max_size());
                if (r.k() >= 2) nondegenerate = true;
            }
            if (hi > lo || nondegenerate) found = true;
            if (lo > 0)
                eta0 = std::max(eta0, static_cast<double>(hi) / lo);
        }
    } else {
        for (const PacketSizePmf* r : model.reachable_rows(max_steps)) {
            if (r->k() < 2) continue;
            found = true;
            const PacketSizePmf even = r->k() % 2 ? reduce_odd_support(*r) : *r;
            eta0 = std::max(eta0, xi_constant(even).first);
        }
    }
    if (!found)
        throw std::invalid_argument(
            "eta_constant: every reachable conditional pmf is degenerate");
    return {eta0, std::max(1.0, eta0)};
}

PacketSizePmf modified_pmf(const PacketSizePmf& pmf, double p) {
    if (p < 0.0 || p >= 1.0)
        throw std::invalid_argument("modified_pmf: p must be in [0, 1)");
    if (pmf.k() % 2 != 0)
        throw std::invalid_argument("modified_pmf: odd K must be reduced first");
    const auto& f = pmf.probs();
    size_t half = pmf.k() / 2;
    std::vector<double> out(pmf.k());
    for (size_t i = 0; i < half; ++i) out[i] = f[i] * (1.0 - p);
    for (size_t i = half; i < pmf.k(); ++i) out[i] = f[i] + p * f[i - half];
    return PacketSizePmf::make(pmf.support(), std::move(out));
}

PacketSizePmf insertion_modified_pmf(const PacketSizePmf& pmf, double p) {
    if (pmf.k() % 2 == 0) return modified_pmf(pmf, p);
    PacketSizePmf reduced = reduce_odd_support(pmf);
    PacketSizePmf mod = modified_pmf(reduced, p);
    double kept = pmf.probs().front();
    std::vector<double> out(pmf.k());
    out[0] = kept;
    for (size_t i = 1; i < pmf.k(); ++i)
        out[i] = mod.probs()[i - 1] * (1.0 - kept);
    return PacketSizePmf::make(pmf.support(), std::move(out));
}

double kl_divergence(const PacketSizePmf& q, const PacketSizePmf& f) {
    double d = 0.0;
    for (size_t i = 0; i < q.k(); ++i) {
        double qi = q.probs()[i];
        double fi = f.prob_of(q.support()[i]);
        if (fi == 0.0) return std::numeric_limits<double>::infinity();
        d += qi * std::log(qi / fi);
    }
    return std::max(0.0, d);
}

double covertness_lower_bound(double total_kl) {
    if (total_kl < 0.0)
        throw std::invalid_argument("covertness_lower_bound: negative KL");
    return std::max(0.0, 0.5 - std::sqrt(total_kl / 2.0));
}

namespace {

// Mean inserted bits per packet: sum over lower-half sizes of
// f(s) * (target(s) - s). Assumes even K.
double mean_appended_bits(const PacketSizePmf& pmf) {
    size_t half = pmf.k() / 2;
    double w = 0.0;
    for (size_t i = 0; i < half; ++i)
        w += pmf.probs()[i] *
             (pmf.support()[i + half] - pmf.support()[i]);
    return w;
}

}  // namespace

ThroughputBound expected_throughput(const PacketSizePmf& pmf,
                                    const CovertnessBudget& budget) {
    const PacketSizePmf even = pmf.k() % 2 ? reduce_odd_support(pmf) : pmf;
    double w = mean_appended_bits(even);
    if (pmf.k() % 2) w *= 1.0 - pmf.probs().front();
    ThroughputBound out;
    out.expected_bits = w * budget.p * static_cast<double>(budget.n);
    out.half_mean_threshold = out.expected_bits / 2.0;
    return out;
}

DependentThroughputBound dependent_throughput_bound(
    const DependentSizeModel& model, const CovertnessBudget& budget,
    uint64_t n) {
    // Forward recursion on the distribution over truncated histories.
    std::map<SizeHistory, double> state{{SizeHistory{}, 1.0}};
    double c_n = 0.0;
    for (uint64_t i = 0; i < n; ++i) {
        std::map<SizeHistory, double> next;
        for (const auto& [h, mass] : state) {
            const PacketSizePmf& r = model.row(h);
            if (r.k() >= 2) c_n += mass;
            for (size_t j = 0; j < r.k(); ++j) {
                SizeHistory nh = h;
                nh.push_back(r.support()[j]);
                if (nh.size() > model.order())
                    nh.erase(nh.begin(),
                             nh.end() - static_cast<ptrdiff_t>(model.order()));
                next[nh] += mass * r.probs()[j];
            }
        }
        state = std::move(next);
    }
    return {c_n, budget.p * c_n};
}

double flag_bit_scalar(double r) {
    if (r < 0.0 || r >= 1.0)
        throw std::invalid_argument("flag_bit_scalar: r must be in [0, 1)");
    if (r == 0.0) return 0.0;
    return 0.5 * (1.0 - r) * std::log(1.0 - r) +
           0.5 * (1.0 + r) * std::log(1.0 + r);
}

double flag_bit_kl(const PacketSizePmf& pmf, double p) {
    if (p < 0.0 || p >= 1.0)
        throw std::invalid_argument("flag_bit_kl: p must be in [0, 1)");
    if (pmf.k() % 2 != 0)
        throw std::invalid_argument("flag_bit_kl: odd K must be reduced first");
    const auto& f = pmf.probs();
    size_t half = pmf.k() / 2;
    PacketSizePmf mod = modified_pmf(pmf, p);
    double total = 0.0;
    for (size_t i = half; i < pmf.k(); ++i) {
        double denom = f[i] * (1.0 - p) + f[i - half] * p;
        double r = f[i - half] * p / denom;
        total += mod.probs()[i] * flag_bit_scalar(r);
    }
    double xi0 = xi_constant(pmf).first;
    double bound = xi0 * p / (1.0 - p);
    bound *= bound;
    if (total > bound + 1e-15)
        throw std::logic_error("flag_bit_kl: closed-form bound violated");
    return total;
}

}  // namespace covert
