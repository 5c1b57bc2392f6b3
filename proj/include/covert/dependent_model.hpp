#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "covert/pmf.hpp"

namespace covert {

using SizeHistory = std::vector<uint32_t>;

// Finite-order history-conditional packet-size model. The conditional pmf of
// packet i depends on the previous min(i, order) sizes. Degenerate rows
// (a single possible size) are allowed; they are skipped for insertion.
class DependentSizeModel {
public:
    DependentSizeModel(size_t order, PacketSizePmf initial,
                       std::map<SizeHistory, PacketSizePmf> transitions);

    // Embeds an i.i.d. pmf as an order-0 model.
    static DependentSizeModel iid(PacketSizePmf pmf);

    size_t order() const { return order_; }
    const PacketSizePmf& initial() const { return initial_; }
    const std::map<SizeHistory, PacketSizePmf>& transitions() const {
        return transitions_;
    }

    // Conditional pmf of packet `index` given the full original-size prefix.
    // Throws if the (truncated) history has no row.
    const PacketSizePmf& conditional(const SizeHistory& prefix,
                                     size_t index) const;

    // Conditional pmf keyed directly by a truncated history (length
    // min(index, order)); index 0 maps to the initial pmf.
    const PacketSizePmf& row(const SizeHistory& truncated_history) const;

    // Histories reachable at each step, in step order, until the reachable
    // set stabilizes or max_steps is hit. Element 0 is the empty history.
    std::vector<std::vector<SizeHistory>> reachable_histories(
        size_t max_steps) const;

    // Every distinct conditional pmf reachable from the initial state
    // (the initial pmf included).
    std::vector<const PacketSizePmf*> reachable_rows(size_t max_steps) const;

private:
    void check_closure() const;

    size_t order_;
    PacketSizePmf initial_;
    std::map<SizeHistory, PacketSizePmf> transitions_;
};

}  // namespace covert
