#include "covert/dependent_model.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace covert {

namespace {

std::string history_to_string(const SizeHistory& h) {
    std::string s = "(";
    for (size_t i = 0; i < h.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(h[i]);
    }
    return s + ")";
}

SizeHistory advance(const SizeHistory& h, uint32_t size, size_t order) {
    SizeHistory next = h;
    next.push_back(size);
    if (next.size() > order)
        next.erase(next.begin(), next.end() - static_cast<ptrdiff_t>(order));
    return next;
}

}  // namespace

DependentSizeModel::DependentSizeModel(
    size_t order, PacketSizePmf initial,
    std::map<SizeHistory, PacketSizePmf> transitions)
    : order_(order),
      initial_(std::move(initial)),
      transitions_(std::move(transitions)) {
    check_closure();
}

DependentSizeModel DependentSizeModel::iid(PacketSizePmf pmf) {
    return DependentSizeModel(0, std::move(pmf), {});
}

const PacketSizePmf& DependentSizeModel::row(const SizeHistory& h) const {
    if (h.empty()) return initial_;
    auto it = transitions_.find(h);
    if (it == transitions_.end())
        throw std::out_of_range("dependent model: no row for history " +
                                history_to_string(h));
    return it->second;
}

const PacketSizePmf& DependentSizeModel::conditional(const SizeHistory& prefix,
                                                     size_t index) const {
    if (index > prefix.size())
        throw std::invalid_argument("dependent model: index beyond prefix");
    size_t len = std::min(index, order_);
    SizeHistory h(prefix.begin() + static_cast<ptrdiff_t>(index - len),
                  prefix.begin() + static_cast<ptrdiff_t>(index));
    return row(h);
}

void DependentSizeModel::check_closure() const {
    if (order_ == 0) return;
    std::set<SizeHistory> seen;
    std::vector<SizeHistory> frontier{SizeHistory{}};
    seen.insert(SizeHistory{});
    while (!frontier.empty()) {
        std::vector<SizeHistory> next;
        for (const auto& h : frontier) {
            const PacketSizePmf& r = row(h);  // throws on a missing row
            for (uint32_t s : r.support()) {
                SizeHistory nh = advance(h, s, order_);
                if (seen.insert(nh).second) next.push_back(nh);
            }
        }
        frontier = std::move(next);
    }
}

std::vector<std::vector<SizeHistory>> DependentSizeModel::reachable_histories(
    size_t max_steps) const {
    std::vector<std::vector<SizeHistory>> steps;
    std::set<SizeHistory> current{SizeHistory{}};
    std::set<std::set<SizeHistory>> seen_sets;
    for (size_t i = 0; i < max_steps; ++i) {
        steps.emplace_back(current.begin(), current.end());
        if (!seen_sets.insert(current).second) break;  // stabilized
        std::set<SizeHistory> next;
        for (const auto& h : current)
            for (uint32_t s : row(h).support())
                next.insert(advance(h, s, order_));
        current = std::move(next);
    }
    return steps;
}

std::vector<const PacketSizePmf*> DependentSizeModel::reachable_rows(
    size_t max_steps) const {
    std::vector<const PacketSizePmf*> rows;
    std::set<const PacketSizePmf*> seen;
    for (const auto& step : reachable_histories(max_steps))
        for (const auto& h : step) {
            const PacketSizePmf* r = &row(h);
            if (seen.insert(r).second) rows.push_back(r);
        }
    return rows;
}

}  // namespace covert
