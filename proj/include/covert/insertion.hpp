#pragma once

#include <optional>

#include "covert/analytics.hpp"
#include "covert/dependent_model.hpp"
#include "covert/key.hpp"
#include "covert/packet.hpp"

namespace covert {

// p = epsilon / (xi * sqrt(n)). Odd supports are reduced before computing xi.
CovertnessBudget derive_budget(const PacketSizePmf& pmf, uint64_t n,
                               double epsilon);

// p' = epsilon / (eta * sqrt(n)).
CovertnessBudget derive_budget(const DependentSizeModel& model, uint64_t n,
                               double epsilon, EtaMode mode);

// Half-support shift map of one (possibly reduced) support: a lower-half
// size maps to its upper-half counterpart.
class InsertionMap {
public:
    // Requires K >= 2 before reduction; odd K drops the smallest size.
    explicit InsertionMap(const PacketSizePmf& pmf);

    // New size for a lower-half source, nullopt when there is no room or the
    // size was disregarded by the odd-K reduction. Throws when the size is
    // not in the support at all.
    std::optional<uint32_t> insert_target(uint32_t size) const;

    // Inverse: original size for an upper-half result, nullopt when the size
    // cannot be the image of an insertion.
    std::optional<uint32_t> extract_source(uint32_t size) const;

    std::optional<uint32_t> dropped() const { return dropped_; }

private:
    std::vector<uint32_t> sizes_;  // even-length reduced support
    std::optional<uint32_t> dropped_;
};

struct InsertionRecord {
    uint64_t index = 0;
    uint32_t bits_added = 0;
    uint8_t flag_set = 0;
};

struct InsertionOutcome {
    PacketStream stream;
    uint64_t inserted_bits = 0;                // n_c
    std::vector<InsertionRecord> per_packet;   // one entry per selected packet
    uint64_t message_consumed = 0;             // true message bits used
};

// Unit-spaced scheme: each insertion appends m = K/2 bits.
InsertionOutcome alice_insert_unit(const PacketStream& stream,
                                   const CovertKey& key,
                                   const PacketSizePmf& pmf,
                                   const BitString& message);

// General-support scheme: size S_i becomes S_{i+K/2}.
InsertionOutcome alice_insert_general(const PacketStream& stream,
                                      const CovertKey& key,
                                      const PacketSizePmf& pmf,
                                      const BitString& message);

// Dependent scheme: the map is recomputed from the conditional support of
// the original size history; degenerate rows are skipped.
InsertionOutcome alice_insert_dependent(const PacketStream& stream,
                                        const CovertKey& key,
                                        const DependentSizeModel& model,
                                        const BitString& message);

// Size-only simulation paths. Given the same stream/key seeds these produce
// exactly the sizes (and n_c) of the full pipeline; they exist so Monte
// Carlo sweeps do not have to materialize payloads.
std::vector<uint32_t> simulate_inserted_sizes(const PacketSizePmf& pmf,
                                              double p, uint64_t n,
                                              uint64_t stream_seed,
                                              uint64_t key_seed);
uint64_t simulate_inserted_bits(const PacketSizePmf& pmf, double p, uint64_t n,
                                uint64_t stream_seed, uint64_t key_seed);
std::vector<uint32_t> simulate_inserted_sizes(const DependentSizeModel& model,
                                              double p, uint64_t n,
                                              uint64_t stream_seed,
                                              uint64_t key_seed);
uint64_t simulate_inserted_bits(const DependentSizeModel& model, double p,
                                uint64_t n, uint64_t stream_seed,
                                uint64_t key_seed);

}  // namespace covert
