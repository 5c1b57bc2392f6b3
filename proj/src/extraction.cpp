#include "covert/extraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace covert {

namespace {

void extract_packet(Packet& pkt, const InsertionMap& map, BitString& bits,
                    uint64_t index) {
    if (pkt.flag != 1) return;  // selected but nothing inserted
    std::optional<uint32_t> source = map.extract_source(pkt.size_bits);
    if (!source)
        throw std::runtime_error(
            "bob_extract: packet " + std::to_string(index) +
            " has flag 1 but size " + std::to_string(pkt.size_bits) +
            " is not an insertion image (corrupt stream or wrong key)");
    uint32_t removed = pkt.size_bits - *source;
    bits.insert(bits.end(), pkt.payload.end() - removed, pkt.payload.end());
    pkt.payload.resize(pkt.payload.size() - removed);
    pkt.size_bits = *source;
}

}  // namespace

ExtractionResult bob_extract(const PacketStream& stream, const CovertKey& key,
                             const PacketSizePmf& pmf) {
    if (key.n != stream.length())
        throw std::invalid_argument("bob_extract: key length " +
                                    std::to_string(key.n) +
                                    " does not match stream length " +
                                    std::to_string(stream.length()));
    InsertionMap map(pmf);
    ExtractionResult result;
    result.restored = stream;
    for (uint64_t idx : key.selected)
        extract_packet(result.restored.packets[idx], map, result.bits, idx);
    return result;
}

ExtractionResult bob_extract(const PacketStream& stream, const CovertKey& key,
                             const DependentSizeModel& model) {
    if (key.n != stream.length())
        throw std::invalid_argument("bob_extract: key length mismatch");
    ExtractionResult result;
    result.restored = stream;
    auto next_selected = key.selected.begin();
    SizeHistory history;
    for (uint64_t i = 0; i < stream.length(); ++i) {
        Packet& pkt = result.restored.packets[i];
        bool selected =
            next_selected != key.selected.end() && *next_selected == i;
        if (selected) {
            ++next_selected;
            const PacketSizePmf& row = model.row(history);
            if (row.k() >= 2) {
                InsertionMap map(row);
                extract_packet(pkt, map, result.bits, i);
            }
        }
        history.push_back(pkt.size_bits);  // restored original size
        if (history.size() > model.order()) history.erase(history.begin());
    }
    return result;
}

bool streams_equivalent(const PacketStream& original,
                        const PacketStream& restored, const CovertKey& key) {
    if (original.length() != restored.length()) return false;
    auto next_selected = key.selected.begin();
    for (uint64_t i = 0; i < original.length(); ++i) {
        const Packet& a = original.packets[i];
        const Packet& b = restored.packets[i];
        if (a.size_bits != b.size_bits || a.payload != b.payload) return false;
        bool selected =
            next_selected != key.selected.end() && *next_selected == i;
        if (selected)
            ++next_selected;
        else if (a.flag != b.flag)
            return false;
    }
    return true;
}

}  // namespace covert
