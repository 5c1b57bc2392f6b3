#include "covert/generate.hpp"

#include <stdexcept>

namespace covert {

uint64_t total_size(const PacketStream& stream) {
    uint64_t total = 0;
    for (const Packet& p : stream.packets) total += p.size_bits;
    return total;
}

std::vector<uint32_t> sizes_of(const PacketStream& stream) {
    std::vector<uint32_t> sizes;
    sizes.reserve(stream.packets.size());
    for (const Packet& p : stream.packets) sizes.push_back(p.size_bits);
    return sizes;
}

namespace {

Packet fill_packet(uint32_t size, uint64_t seed, uint64_t index) {
    Packet pkt;
    pkt.size_bits = size;
    pkt.flag = CounterRng(seed, rng_stream::kFlagBit, index).next_bit() ? 1 : 0;
    pkt.payload.reserve(size);
    CounterRng payload(seed, rng_stream::kPayload, index);
    uint64_t word = 0;
    for (uint32_t b = 0; b < size; ++b) {
        if (b % 64 == 0) word = payload.next_u64();
        pkt.payload.push_back((word >> (b % 64)) & 1);
    }
    return pkt;
}

}  // namespace

std::vector<uint32_t> sample_iid_sizes(const PacketSizePmf& pmf, uint64_t n,
                                       uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_iid_sizes: n must be >= 1");
    std::vector<uint32_t> sizes;
    sizes.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        CounterRng rng(seed, rng_stream::kPacketSize, i);
        sizes.push_back(pmf.sample(rng));
    }
    return sizes;
}

std::vector<uint32_t> sample_dependent_sizes(const DependentSizeModel& model,
                                             uint64_t n, uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("sample_dependent_sizes: n must be >= 1");
    std::vector<uint32_t> sizes;
    sizes.reserve(n);
    SizeHistory history;
    for (uint64_t i = 0; i < n; ++i) {
        const PacketSizePmf& row = model.row(history);
        CounterRng rng(seed, rng_stream::kPacketSize, i);
        uint32_t s = row.sample(rng);
        sizes.push_back(s);
        history.push_back(s);
        if (history.size() > model.order())
            history.erase(history.begin());
    }
    return sizes;
}

PacketStream generate_iid(const PacketSizePmf& pmf, uint64_t n, uint64_t seed) {
    PacketStream stream;
    stream.seed = seed;
    stream.packets.reserve(n);
    std::vector<uint32_t> sizes = sample_iid_sizes(pmf, n, seed);
    for (uint64_t i = 0; i < n; ++i)
        stream.packets.push_back(fill_packet(sizes[i], seed, i));
    return stream;
}

PacketStream generate_dependent(const DependentSizeModel& model, uint64_t n,
                                uint64_t seed) {
    PacketStream stream;
    stream.seed = seed;
    stream.packets.reserve(n);
    std::vector<uint32_t> sizes = sample_dependent_sizes(model, n, seed);
    for (uint64_t i = 0; i < n; ++i)
        stream.packets.push_back(fill_packet(sizes[i], seed, i));
    return stream;
}

}  // namespace covert
