#pragma once

#include "covert/dependent_model.hpp"
#include "covert/packet.hpp"
#include "covert/pmf.hpp"

namespace covert {

// I.i.d. stream: sizes ~ pmf, flags Bernoulli(1/2), payload bits uniform.
// Deterministic given (pmf, n, seed); per-packet draws are counter-derived,
// so packet i is the same regardless of generation order.
PacketStream generate_iid(const PacketSizePmf& pmf, uint64_t n, uint64_t seed);

// Each size is drawn from the conditional pmf of its truncated history.
PacketStream generate_dependent(const DependentSizeModel& model, uint64_t n,
                                uint64_t seed);

// Size-only fast path: identical to sizes_of(generate_iid(pmf, n, seed)).
std::vector<uint32_t> sample_iid_sizes(const PacketSizePmf& pmf, uint64_t n,
                                       uint64_t seed);

// Size-only fast path matching generate_dependent.
std::vector<uint32_t> sample_dependent_sizes(const DependentSizeModel& model,
                                             uint64_t n, uint64_t seed);

}  // namespace covert
