#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covert {

// Shared secret: the sorted indices of packets selected for possible
// insertion. Generated as n i.i.d. Bernoulli(p) draws, independent of any
// packet content.
struct CovertKey {
    uint64_t n = 0;
    double p = 0.0;
    std::vector<uint64_t> selected;  // strictly increasing, in [0, n)
    uint64_t seed = 0;

    // Canonical serialized length: one ceil(log2 n) address per selection.
    uint64_t address_bits() const;
};

CovertKey generate_key(uint64_t n, double p, uint64_t seed);

// Binary key format: magic "CVK1", u64-le n, u64-le count, count u64-le
// indices.
void write_key_file(const std::string& path, const CovertKey& key);
CovertKey read_key_file(const std::string& path);

}  // namespace covert
