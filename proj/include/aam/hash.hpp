#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aam {

// 256-bit value with big-endian numeric interpretation. Used for block ids,
// priority tiebreaks and committee selection streams.
struct Hash256 {
    std::array<uint8_t, 32> bytes{};

    static Hash256 zero() { return Hash256{}; }
    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }
    // Number of leading zero bits when read as a big-endian integer.
    int leading_zero_bits() const;
    // First 8 bytes as a big-endian integer; enough entropy for seeding.
    uint64_t to_u64() const;
    std::string hex() const;
    static Hash256 from_hex(std::string_view hex);

    auto operator<=>(const Hash256&) const = default;
};

Hash256 sha256(std::span<const uint8_t> data);
Hash256 sha256(std::string_view data);

// Convenience for hashing the concatenation of several byte pieces.
class HashWriter {
public:
    HashWriter& write(std::span<const uint8_t> data) {
        buf_.insert(buf_.end(), data.begin(), data.end());
        return *this;
    }
    HashWriter& write(std::string_view s) {
        return write(std::span<const uint8_t>(
            reinterpret_cast<const uint8_t*>(s.data()), s.size()));
    }
    HashWriter& write(const Hash256& h) {
        return write(std::span<const uint8_t>(h.bytes.data(), h.bytes.size()));
    }
    HashWriter& write_u64(uint64_t v);
    Hash256 finish() const { return sha256(std::span<const uint8_t>(buf_)); }

private:
    std::vector<uint8_t> buf_;
};

}  // namespace aam
