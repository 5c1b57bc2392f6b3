#pragma once

#include <cstdint>
#include <vector>

namespace covert {

using BitString = std::vector<bool>;

struct Packet {
    uint32_t size_bits = 0;  // payload length in bits
    uint8_t flag = 0;        // one header bit
    BitString payload;       // exactly size_bits entries

    bool operator==(const Packet&) const = default;
};

struct PacketStream {
    std::vector<Packet> packets;
    uint64_t seed = 0;  // generation seed, 0 when read from a file

    size_t length() const { return packets.size(); }
    bool operator==(const PacketStream&) const = default;
};

uint64_t total_size(const PacketStream& stream);

std::vector<uint32_t> sizes_of(const PacketStream& stream);

}  // namespace covert
