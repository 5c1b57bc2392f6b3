#include "covert/stream_io.hpp"

#include <fstream>
#include <stdexcept>

namespace covert {

namespace {

constexpr char kMagic[4] = {0x43, 0x56, 0x4c, 0x31};  // "CVL1"

void write_u32(std::ostream& out, uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff),
                 static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("stream file: truncated");
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) |
           (static_cast<uint32_t>(b[3]) << 24);
}

}  // namespace

void write_stream(std::ostream& out, const PacketStream& stream) {
    out.write(kMagic, 4);
    write_u32(out, static_cast<uint32_t>(stream.packets.size()));
    for (const Packet& p : stream.packets) {
        write_u32(out, p.size_bits);
        out.put(static_cast<char>(p.flag));
        uint32_t nbytes = (p.size_bits + 7) / 8;
        for (uint32_t i = 0; i < nbytes; ++i) {
            unsigned char byte = 0;
            for (uint32_t b = 0; b < 8; ++b) {
                uint32_t bit = i * 8 + b;
                if (bit < p.size_bits && p.payload[bit])
                    byte |= static_cast<unsigned char>(1u << (7 - b));
            }
            out.put(static_cast<char>(byte));
        }
    }
}

PacketStream read_stream(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != std::string(kMagic, 4))
        throw std::runtime_error("stream file: bad magic, expected CVL1");
    uint32_t count = read_u32(in);
    PacketStream stream;
    stream.packets.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        Packet p;
        p.size_bits = read_u32(in);
        int flag = in.get();
        if (flag != 0 && flag != 1)
            throw std::runtime_error("stream file: flag byte must be 0 or 1");
        p.flag = static_cast<uint8_t>(flag);
        uint32_t nbytes = (p.size_bits + 7) / 8;
        std::vector<unsigned char> bytes(nbytes);
        in.read(reinterpret_cast<char*>(bytes.data()), nbytes);
        if (!in) throw std::runtime_error("stream file: truncated payload");
        p.payload.reserve(p.size_bits);
        for (uint32_t b = 0; b < p.size_bits; ++b)
            p.payload.push_back((bytes[b / 8] >> (7 - b % 8)) & 1);
        stream.packets.push_back(std::move(p));
    }
    return stream;
}

void write_stream_file(const std::string& path, const PacketStream& stream) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_stream(out, stream);
    if (!out) throw std::runtime_error("write failed: " + path);
}

PacketStream read_stream_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_stream(in);
}

BitString read_message_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    BitString bits;
    char c;
    while (in.get(c))
        for (int b = 7; b >= 0; --b)
            bits.push_back((static_cast<unsigned char>(c) >> b) & 1);
    return bits;
}

void write_message_file(const std::string& path, const BitString& bits) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (size_t i = 0; i < bits.size(); i += 8) {
        unsigned char byte = 0;
        for (size_t b = 0; b < 8 && i + b < bits.size(); ++b)
            if (bits[i + b]) byte |= static_cast<unsigned char>(1u << (7 - b));
        out.put(static_cast<char>(byte));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace covert
