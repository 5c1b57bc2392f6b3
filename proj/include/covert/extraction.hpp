#pragma once

#include "covert/dependent_model.hpp"
#include "covert/insertion.hpp"
#include "covert/key.hpp"
#include "covert/packet.hpp"

namespace covert {

struct ExtractionResult {
    BitString bits;         // extracted in insertion order (message + padding)
    PacketStream restored;  // sizes and payloads of the pre-insertion stream
};

// Inverse of alice_insert_unit / alice_insert_general. Restores sizes and
// payloads exactly; flag bits of selected packets stay as Alice left them
// (the construction overwrites them, so they are not recoverable).
// Throws when a selected packet carries flag 1 but its size cannot be the
// image of an insertion (corruption signal).
ExtractionResult bob_extract(const PacketStream& stream, const CovertKey& key,
                             const PacketSizePmf& pmf);

// Inverse of alice_insert_dependent. Original sizes are reconstructed front
// to back, so each conditional support is computed from recovered history.
ExtractionResult bob_extract(const PacketStream& stream, const CovertKey& key,
                             const DependentSizeModel& model);

// Round-trip equality modulo the overwritten flag bits: sizes and payloads
// of every packet, flags of unselected packets.
bool streams_equivalent(const PacketStream& original,
                        const PacketStream& restored, const CovertKey& key);

}  // namespace covert
