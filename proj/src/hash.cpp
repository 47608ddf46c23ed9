#include "aam/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace aam {

Hash256 sha256(std::span<const uint8_t> data) {
    Hash256 out;
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
    bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
              EVP_DigestFinal_ex(ctx, out.bytes.data(), &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok || len != 32) throw std::runtime_error("SHA-256 failed");
    return out;
}

Hash256 sha256(std::string_view data) {
    return sha256(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

int Hash256::leading_zero_bits() const {
    int n = 0;
    for (auto b : bytes) {
        if (b == 0) {
            n += 8;
            continue;
        }
        for (int bit = 7; bit >= 0; --bit) {
            if (b & (1u << bit)) return n;
            ++n;
        }
    }
    return n;
}

uint64_t Hash256::to_u64() const {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes[i];
    return v;
}

std::string Hash256::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
}

Hash256 Hash256::from_hex(std::string_view hex) {
    if (hex.size() != 64) throw std::invalid_argument("hex length != 64");
    Hash256 h;
    for (size_t i = 0; i < 32; ++i)
        h.bytes[i] = static_cast<uint8_t>((hex_nibble(hex[2 * i]) << 4) |
                                          hex_nibble(hex[2 * i + 1]));
    return h;
}

HashWriter& HashWriter::write_u64(uint64_t v) {
    uint8_t b[8];
    for (int i = 7; i >= 0; --i) {
        b[i] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return write(std::span<const uint8_t>(b, 8));
}

}  // namespace aam
