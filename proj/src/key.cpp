#include "covert/key.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

#include "covert/rng.hpp"

namespace covert {

uint64_t CovertKey::address_bits() const {
    uint64_t bits_per_address = n <= 1 ? 0 : std::bit_width(n - 1);
    return selected.size() * bits_per_address;
}

CovertKey generate_key(uint64_t n, double p, uint64_t seed) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("generate_key: p must be in (0, 1)");
    CovertKey key;
    key.n = n;
    key.p = p;
    key.seed = seed;
    for (uint64_t i = 0; i < n; ++i) {
        CounterRng rng(seed, rng_stream::kKeySelection, i);
        if (rng.next_bernoulli(p)) key.selected.push_back(i);
    }
    return key;
}

namespace {

void write_u64(std::ostream& out, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

uint64_t read_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("key file: truncated");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

void write_key_file(const std::string& path, const CovertKey& key) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write("CVK1", 4);
    write_u64(out, key.n);
    write_u64(out, key.selected.size());
    for (uint64_t idx : key.selected) write_u64(out, idx);
    if (!out) throw std::runtime_error("write failed: " + path);
}

CovertKey read_key_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "CVK1")
        throw std::runtime_error("key file: bad magic, expected CVK1");
    CovertKey key;
    key.n = read_u64(in);
    uint64_t count = read_u64(in);
    key.selected.reserve(count);
    uint64_t prev = 0;
    for (uint64_t i = 0; i < count; ++i) {
        uint64_t idx = read_u64(in);
        if (idx >= key.n || (i > 0 && idx <= prev))
            throw std::runtime_error("key file: indices must be strictly "
                                     "increasing and below n");
        key.selected.push_back(idx);
        prev = idx;
    }
    return key;
}

}  // namespace covert
