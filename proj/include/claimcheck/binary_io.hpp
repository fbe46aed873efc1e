#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "claimcheck/errors.hpp"

namespace claimcheck {

// Little-endian fixed-width writer; doubles are stored as their raw bits so
// round trips are exact.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(std::string_view s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }

 private:
  void put(std::uint64_t v, int n) {
    char buf[8];
    for (int i = 0; i < n; ++i) buf[i] = static_cast<char>(v >> (8 * i));
    out_.write(buf, n);
  }
  std::ostream& out_;
};

// Reader counterpart; every short read raises ParseError("truncated ...").
class BinaryReader {
 public:
  BinaryReader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string bytes(std::size_t n) {
    std::string s(n, '\0');
    if (n > 0 && !in_.read(s.data(), static_cast<std::streamsize>(n))) truncated();
    return s;
  }
  std::string str(std::size_t max_len = 1u << 20) {
    std::uint32_t n = u32();
    if (n > max_len) throw ParseError("corrupt " + what_ + ": string length " + std::to_string(n));
    return bytes(n);
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::uint64_t get(int n) {
    unsigned char buf[8];
    if (!in_.read(reinterpret_cast<char*>(buf), n)) truncated();
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
    return v;
  }
  [[noreturn]] void truncated() { throw ParseError("truncated " + what_); }

  std::istream& in_;
  std::string what_;
};

}  // namespace claimcheck
