#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cstdio>
#include <sstream>

#include "covert/generate.hpp"
#include "covert/stream_io.hpp"

using namespace covert;

namespace {

// Pearson chi-square goodness of fit against the pmf at significance 0.001.
void check_chi_square(const std::vector<uint32_t>& sizes,
                      const PacketSizePmf& pmf) {
    std::vector<uint64_t> counts(pmf.k(), 0);
    for (uint32_t s : sizes) {
        ptrdiff_t idx = pmf.index_of(s);
        REQUIRE(idx >= 0);
        ++counts[static_cast<size_t>(idx)];
    }
    double stat = 0.0;
    for (size_t i = 0; i < pmf.k(); ++i) {
        double expected = pmf.probs()[i] * static_cast<double>(sizes.size());
        double d = static_cast<double>(counts[i]) - expected;
        stat += d * d / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(pmf.k() - 1));
    CHECK(stat < boost::math::quantile(dist, 0.999));
}

}  // namespace

TEST_CASE("iid generation is deterministic and well distributed") {
    auto pmf = make_pmf({8, 9}, {0.5, 0.5});
    auto stream = generate_iid(pmf, 100000, 42);
    auto again = generate_iid(pmf, 100000, 42);
    CHECK(stream == again);
    CHECK_FALSE(stream == generate_iid(pmf, 100000, 43));

    uint64_t eights = 0;
    for (const auto& p : stream.packets)
        if (p.size_bits == 8) ++eights;
    double freq = static_cast<double>(eights) / 100000.0;
    CHECK(freq == doctest::Approx(0.5).epsilon(0.02));
    check_chi_square(sizes_of(stream), pmf);

    for (const auto& p : stream.packets) {
        CHECK(p.payload.size() == p.size_bits);
        CHECK((p.flag == 0 || p.flag == 1));
    }
}

TEST_CASE("single-packet stream stays in the support") {
    auto pmf = make_pmf({8, 9}, {0.5, 0.5});
    auto stream = generate_iid(pmf, 1, 7);
    REQUIRE(stream.length() == 1);
    CHECK((stream.packets[0].size_bits == 8 || stream.packets[0].size_bits == 9));
    CHECK_THROWS_AS(generate_iid(pmf, 0, 7), std::invalid_argument);
}

TEST_CASE("flags are balanced under H0") {
    auto pmf = make_pmf({8, 9}, {0.5, 0.5});
    auto stream = generate_iid(pmf, 100000, 11);
    uint64_t ones = 0;
    for (const auto& p : stream.packets) ones += p.flag;
    CHECK(static_cast<double>(ones) / 100000.0 ==
          doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("dependent generation follows the rows") {
    auto initial = make_pmf({8, 9}, {0.5, 0.5});
    std::map<SizeHistory, PacketSizePmf> rows{
        {{8}, make_pmf({8, 9}, {0.5, 0.5})},
        {{9}, make_pmf({8, 9}, {0.9, 0.1})},
    };
    DependentSizeModel model(1, initial, rows);
    auto stream = generate_dependent(model, 100000, 5);
    CHECK(stream == generate_dependent(model, 100000, 5));

    // Empirical transition frequencies against each row.
    std::map<uint32_t, std::pair<uint64_t, uint64_t>> trans;  // prev -> (to8, to9)
    for (size_t i = 1; i < stream.packets.size(); ++i) {
        auto& cell = trans[stream.packets[i - 1].size_bits];
        if (stream.packets[i].size_bits == 8)
            ++cell.first;
        else
            ++cell.second;
    }
    auto frac8 = [&](uint32_t prev) {
        auto [a, b] = trans[prev];
        return static_cast<double>(a) / static_cast<double>(a + b);
    };
    CHECK(frac8(8) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(frac8(9) == doctest::Approx(0.9).epsilon(0.02));
}

TEST_CASE("order-0 dependent model equals iid generation") {
    auto pmf = make_pmf({10, 20, 35, 50}, {0.4, 0.3, 0.2, 0.1});
    auto model = DependentSizeModel::iid(pmf);
    CHECK(generate_dependent(model, 5000, 13) == generate_iid(pmf, 5000, 13));
    auto single = generate_dependent(model, 1, 13);
    CHECK(single.length() == 1);
}

TEST_CASE("missing transition row is rejected at construction") {
    auto initial = make_pmf({8, 9}, {0.5, 0.5});
    std::map<SizeHistory, PacketSizePmf> rows{
        {{8}, make_pmf({8, 9}, {0.5, 0.5})}};  // no row for history (9)
    CHECK_THROWS_AS(DependentSizeModel(1, initial, rows), std::out_of_range);
}

TEST_CASE("total size") {
    PacketStream stream;
    stream.packets.push_back({8, 0, BitString(8, false)});
    stream.packets.push_back({9, 1, BitString(9, true)});
    CHECK(total_size(stream) == 17);
    CHECK(sizes_of(stream) == std::vector<uint32_t>{8, 9});
}

TEST_CASE("stream file round trip is bit exact") {
    auto pmf = make_pmf({3, 5, 9, 17}, {0.25, 0.25, 0.25, 0.25});
    auto stream = generate_iid(pmf, 500, 99);
    std::stringstream buffer;
    write_stream(buffer, stream);
    auto back = read_stream(buffer);
    CHECK(back.packets == stream.packets);

    // Byte-identical re-serialization.
    std::stringstream second;
    write_stream(second, back);
    CHECK(second.str() == buffer.str());
}

TEST_CASE("stream file layout matches the CVL1 spec") {
    PacketStream stream;
    // 10 bits: 1100000001 -> bytes 0xC0, 0x40 (MSB-first, zero padded).
    BitString payload{1, 1, 0, 0, 0, 0, 0, 0, 0, 1};
    stream.packets.push_back({10, 1, payload});
    std::stringstream buffer;
    write_stream(buffer, stream);
    std::string bytes = buffer.str();
    REQUIRE(bytes.size() == 4 + 4 + 4 + 1 + 2);
    CHECK(bytes.substr(0, 4) == "CVL1");
    CHECK(static_cast<unsigned char>(bytes[4]) == 1);  // count, little endian
    CHECK(static_cast<unsigned char>(bytes[8]) == 10);  // size
    CHECK(static_cast<unsigned char>(bytes[12]) == 1);  // flag
    CHECK(static_cast<unsigned char>(bytes[13]) == 0xC0);
    CHECK(static_cast<unsigned char>(bytes[14]) == 0x40);
}

TEST_CASE("corrupt stream files are rejected") {
    std::stringstream bad_magic("XXXX");
    CHECK_THROWS_AS(read_stream(bad_magic), std::runtime_error);

    PacketStream stream;
    stream.packets.push_back({8, 0, BitString(8, false)});
    std::stringstream buffer;
    write_stream(buffer, stream);
    std::string bytes = buffer.str();
    std::stringstream truncated(bytes.substr(0, bytes.size() - 1));
    CHECK_THROWS_AS(read_stream(truncated), std::runtime_error);
    bytes[12] = 2;  // flag byte out of range
    std::stringstream badflag(bytes);
    CHECK_THROWS_AS(read_stream(badflag), std::runtime_error);
}

TEST_CASE("message file round trip") {
    BitString bits{1, 0, 1, 1, 0, 0, 1, 0, 1, 1};  // 0xB2 + 2 bits
    std::string path = "test_message.tmp";
    write_message_file(path, bits);
    BitString back = read_message_file(path);
    REQUIRE(back.size() == 16);  // padded to a whole byte
    for (size_t i = 0; i < bits.size(); ++i) CHECK(back[i] == bits[i]);
    for (size_t i = bits.size(); i < back.size(); ++i) CHECK_FALSE(back[i]);
    std::remove(path.c_str());
}
