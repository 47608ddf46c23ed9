#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aam/hash.hpp"

namespace aam::codec {

// Canonical byte encoding shared by every consensus payload. Injective and
// deterministic: fixed-width big-endian integers, u32 length prefixes for
// strings and lists, reals carried as 64-bit integers scaled by 1e6.
// Every node must produce byte-identical encodings for equal values.

constexpr double kRealScale = 1e6;

struct UnrepresentableValue : std::runtime_error {
    explicit UnrepresentableValue(const std::string& what)
        : std::runtime_error(what) {}
};

struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Scaled-integer conversion for reals on the 1e-6 grid. Throws
// UnrepresentableValue when the value is not on the grid (tolerance absorbs
// the usual one-ulp slack of decimal-to-binary conversion).
int64_t real_to_grid(double v);
double grid_to_real(int64_t n);
bool on_grid(double v);

class Encoder {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u16(uint16_t v);
    void u32(uint32_t v);
    void u64(uint64_t v);
    void i64(int64_t v) { u64(static_cast<uint64_t>(v)); }
    void boolean(bool v) { u8(v ? 1 : 0); }
    void real(double v) { i64(real_to_grid(v)); }
    void str(std::string_view s);
    void hash(const Hash256& h) {
        buf_.insert(buf_.end(), h.bytes.begin(), h.bytes.end());
    }
    void raw(std::span<const uint8_t> data) {
        buf_.insert(buf_.end(), data.begin(), data.end());
    }
    // Byte blob with its own length prefix.
    void blob(std::span<const uint8_t> data);

    template <typename T, typename Fn>
    void list(const std::vector<T>& items, Fn&& encode_item) {
        u32(static_cast<uint32_t>(items.size()));
        for (const auto& it : items) encode_item(*this, it);
    }
    template <typename T, typename Fn>
    void optional(const std::optional<T>& v, Fn&& encode_item) {
        boolean(v.has_value());
        if (v) encode_item(*this, *v);
    }

    const std::vector<uint8_t>& bytes() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
};

class Decoder {
public:
    explicit Decoder(std::span<const uint8_t> data) : data_(data) {}

    uint8_t u8();
    uint16_t u16();
    uint32_t u32();
    uint64_t u64();
    int64_t i64() { return static_cast<int64_t>(u64()); }
    bool boolean();
    double real() { return grid_to_real(i64()); }
    std::string str();
    Hash256 hash();
    std::vector<uint8_t> blob();

    template <typename T, typename Fn>
    std::vector<T> list(Fn&& decode_item) {
        uint32_t n = u32();
        std::vector<T> out;
        out.reserve(n);
        for (uint32_t i = 0; i < n; ++i) out.push_back(decode_item(*this));
        return out;
    }
    template <typename T, typename Fn>
    std::optional<T> opt(Fn&& decode_item) {
        if (!boolean()) return std::nullopt;
        return decode_item(*this);
    }

    bool done() const { return pos_ == data_.size(); }
    void expect_done() const {
        if (!done()) throw DecodeError("trailing bytes");
    }

private:
    void need(size_t n) const {
        if (pos_ + n > data_.size()) throw DecodeError("truncated input");
    }
    std::span<const uint8_t> data_;
    size_t pos_ = 0;

    friend class DecoderRaw;
    const uint8_t* take(size_t n) {
        need(n);
        const uint8_t* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }
};

}  // namespace aam::codec
