#pragma once

#include <iosfwd>
#include <string>

#include "covert/packet.hpp"

namespace covert {

// CVL1 stream format: magic "CVL1", u32-le packet count, then per packet
// u32-le size in bits, u8 flag, ceil(size/8) payload bytes MSB-first with
// zero padding in the final byte.
void write_stream(std::ostream& out, const PacketStream& stream);
PacketStream read_stream(std::istream& in);

void write_stream_file(const std::string& path, const PacketStream& stream);
PacketStream read_stream_file(const std::string& path);

// Message files are plain bytes consumed MSB-first.
BitString read_message_file(const std::string& path);
void write_message_file(const std::string& path, const BitString& bits);

}  // namespace covert
