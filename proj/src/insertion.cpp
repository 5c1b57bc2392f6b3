#include "covert/insertion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "covert/generate.hpp"

namespace covert {

namespace {

CovertnessBudget make_budget(double epsilon, uint64_t n, double scale) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("derive_budget: epsilon must be in (0, 1/2)");
    if (n < 1) throw std::invalid_argument("derive_budget: n must be >= 1");
    CovertnessBudget budget;
    budget.epsilon = epsilon;
    budget.n = n;
    budget.scale_constant = scale;
    budget.p = epsilon / (scale * std::sqrt(static_cast<double>(n)));
    if (budget.p >= 1.0)
        throw std::invalid_argument("derive_budget: selection probability >= 1");
    return budget;
}

}  // namespace

CovertnessBudget derive_budget(const PacketSizePmf& pmf, uint64_t n,
                               double epsilon) {
    const PacketSizePmf even = pmf.k() % 2 ? reduce_odd_support(pmf) : pmf;
    return make_budget(epsilon, n, xi_constant(even).second);
}

CovertnessBudget derive_budget(const DependentSizeModel& model, uint64_t n,
                               double epsilon, EtaMode mode) {
    return make_budget(epsilon, n, eta_constant(model, n, mode).second);
}

InsertionMap::InsertionMap(const PacketSizePmf& pmf) {
    if (pmf.k() < 2)
        throw std::invalid_argument("InsertionMap: support must have K >= 2");
    sizes_ = pmf.support();
    if (sizes_.size() % 2 != 0) {
        dropped_ = sizes_.front();
        sizes_.erase(sizes_.begin());
    }
}

std::optional<uint32_t> InsertionMap::insert_target(uint32_t size) const {
    if (dropped_ && size == *dropped_) return std::nullopt;
    auto it = std::lower_bound(sizes_.begin(), sizes_.end(), size);
    if (it == sizes_.end() || *it != size)
        throw std::out_of_range("InsertionMap: observed size " +
                                std::to_string(size) + " not in support");
    size_t idx = static_cast<size_t>(it - sizes_.begin());
    size_t half = sizes_.size() / 2;
    if (idx >= half) return std::nullopt;
    return sizes_[idx + half];
}

std::optional<uint32_t> InsertionMap::extract_source(uint32_t size) const {
    if (dropped_ && size == *dropped_) return std::nullopt;
    auto it = std::lower_bound(sizes_.begin(), sizes_.end(), size);
    if (it == sizes_.end() || *it != size)
        throw std::out_of_range("InsertionMap: observed size " +
                                std::to_string(size) + " not in support");
    size_t idx = static_cast<size_t>(it - sizes_.begin());
    size_t half = sizes_.size() / 2;
    if (idx < half) return std::nullopt;
    return sizes_[idx - half];
}

namespace {

// Appends `count` bits from the message (padding with uniform bits once it
// runs out) and updates the bookkeeping.
void append_bits(Packet& pkt, uint32_t count, const BitString& message,
                 uint64_t& cursor, CounterRng& padding, uint64_t& padded) {
    for (uint32_t b = 0; b < count; ++b) {
        if (cursor < message.size()) {
            pkt.payload.push_back(message[cursor]);
            ++cursor;
        } else {
            pkt.payload.push_back(padding.next_bit());
            ++padded;
        }
    }
    pkt.size_bits += count;
}

template <typename MapForPacket>
InsertionOutcome insert_core(const PacketStream& stream, const CovertKey& key,
                             const BitString& message,
                             MapForPacket&& map_for_packet) {
    if (key.n != stream.length())
        throw std::invalid_argument("alice_insert: key length " +
                                    std::to_string(key.n) +
                                    " does not match stream length " +
                                    std::to_string(stream.length()));
    InsertionOutcome outcome;
    outcome.stream = stream;
    CounterRng padding(key.seed, rng_stream::kPadding, 0);
    uint64_t padded = 0;
    for (uint64_t idx : key.selected) {
        Packet& pkt = outcome.stream.packets[idx];
        InsertionRecord rec;
        rec.index = idx;
        const InsertionMap* map = map_for_packet(idx);
        std::optional<uint32_t> target =
            map ? map->insert_target(pkt.size_bits) : std::nullopt;
        if (target) {
            uint32_t add = *target - pkt.size_bits;
            append_bits(pkt, add, message, outcome.message_consumed, padding,
                        padded);
            pkt.flag = 1;
            rec.bits_added = add;
            rec.flag_set = 1;
            outcome.inserted_bits += add;
        } else {
            pkt.flag = 0;
        }
        outcome.per_packet.push_back(rec);
    }
    return outcome;
}

}  // namespace

InsertionOutcome alice_insert_unit(const PacketStream& stream,
                                   const CovertKey& key,
                                   const PacketSizePmf& pmf,
                                   const BitString& message) {
    if (!pmf.unit_spaced())
        throw std::invalid_argument("alice_insert_unit: pmf is not unit-spaced");
    InsertionMap map(pmf);
    return insert_core(stream, key, message, [&](uint64_t) { return &map; });
}

InsertionOutcome alice_insert_general(const PacketStream& stream,
                                      const CovertKey& key,
                                      const PacketSizePmf& pmf,
                                      const BitString& message) {
    InsertionMap map(pmf);
    return insert_core(stream, key, message, [&](uint64_t) { return &map; });
}

InsertionOutcome alice_insert_dependent(const PacketStream& stream,
                                        const CovertKey& key,
                                        const DependentSizeModel& model,
                                        const BitString& message) {
    // Conditional supports come from the original size history, which Alice
    // still has while scanning front to back.
    std::vector<uint32_t> original = sizes_of(stream);
    std::vector<std::optional<InsertionMap>> maps(stream.length());
    SizeHistory history;
    for (uint64_t i = 0; i < stream.length(); ++i) {
        const PacketSizePmf& row = model.row(history);
        if (row.k() >= 2) maps[i].emplace(row);
        history.push_back(original[i]);
        if (history.size() > model.order()) history.erase(history.begin());
    }
    return insert_core(stream, key, message, [&](uint64_t i) {
        return maps[i] ? &*maps[i] : nullptr;
    });
}

namespace {

template <typename SizeAt, typename MapAt>
void simulate_core(double p, uint64_t n, uint64_t key_seed, SizeAt&& size_at,
                   MapAt&& map_at, std::vector<uint32_t>* sizes_out,
                   uint64_t* bits_out) {
    if (sizes_out) sizes_out->reserve(n);
    uint64_t bits = 0;
    for (uint64_t i = 0; i < n; ++i) {
        uint32_t s = size_at(i);
        CounterRng krng(key_seed, rng_stream::kKeySelection, i);
        if (krng.next_bernoulli(p)) {
            const InsertionMap* map = map_at(i);
            if (map) {
                if (auto target = map->insert_target(s)) {
                    bits += *target - s;
                    s = *target;
                }
            }
        }
        if (sizes_out) sizes_out->push_back(s);
    }
    if (bits_out) *bits_out = bits;
}

}  // namespace

std::vector<uint32_t> simulate_inserted_sizes(const PacketSizePmf& pmf,
                                              double p, uint64_t n,
                                              uint64_t stream_seed,
                                              uint64_t key_seed) {
    InsertionMap map(pmf);
    std::vector<uint32_t> sizes;
    simulate_core(
        p, n, key_seed,
        [&](uint64_t i) {
            CounterRng rng(stream_seed, rng_stream::kPacketSize, i);
            return pmf.sample(rng);
        },
        [&](uint64_t) { return &map; }, &sizes, nullptr);
    return sizes;
}

uint64_t simulate_inserted_bits(const PacketSizePmf& pmf, double p, uint64_t n,
                                uint64_t stream_seed, uint64_t key_seed) {
    InsertionMap map(pmf);
    uint64_t bits = 0;
    simulate_core(
        p, n, key_seed,
        [&](uint64_t i) {
            CounterRng rng(stream_seed, rng_stream::kPacketSize, i);
            return pmf.sample(rng);
        },
        [&](uint64_t) { return &map; }, nullptr, &bits);
    return bits;
}

namespace {

void simulate_dependent(const DependentSizeModel& model, double p, uint64_t n,
                        uint64_t stream_seed, uint64_t key_seed,
                        std::vector<uint32_t>* sizes_out, uint64_t* bits_out) {
    // Maps are cached per row pointer; rows repeat heavily.
    std::map<const PacketSizePmf*, std::optional<InsertionMap>> cache;
    SizeHistory history;
    if (sizes_out) sizes_out->reserve(n);
    uint64_t bits = 0;
    for (uint64_t i = 0; i < n; ++i) {
        const PacketSizePmf& row = model.row(history);
        CounterRng rng(stream_seed, rng_stream::kPacketSize, i);
        uint32_t original = row.sample(rng);
        uint32_t s = original;
        CounterRng krng(key_seed, rng_stream::kKeySelection, i);
        if (krng.next_bernoulli(p) && row.k() >= 2) {
            auto it = cache.find(&row);
            if (it == cache.end())
                it = cache.emplace(&row, InsertionMap(row)).first;
            if (auto target = it->second->insert_target(original)) {
                bits += *target - original;
                s = *target;
            }
        }
        if (sizes_out) sizes_out->push_back(s);
        history.push_back(original);
        if (history.size() > model.order()) history.erase(history.begin());
    }
    if (bits_out) *bits_out = bits;
}

}  // namespace

std::vector<uint32_t> simulate_inserted_sizes(const DependentSizeModel& model,
                                              double p, uint64_t n,
                                              uint64_t stream_seed,
                                              uint64_t key_seed) {
    std::vector<uint32_t> sizes;
    simulate_dependent(model, p, n, stream_seed, key_seed, &sizes, nullptr);
    return sizes;
}

uint64_t simulate_inserted_bits(const DependentSizeModel& model, double p,
                                uint64_t n, uint64_t stream_seed,
                                uint64_t key_seed) {
    uint64_t bits = 0;
    simulate_dependent(model, p, n, stream_seed, key_seed, nullptr, &bits);
    return bits;
}

}  // namespace covert
