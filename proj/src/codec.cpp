#include "aam/codec.hpp"

#include <cmath>
#include <limits>

namespace aam::codec {

// Grid check tolerance: parsed decimal inputs land within a few ulps of the
// scaled integer, while a genuinely off-grid value misses by >= 0.5 sub-units
// at the magnitudes this system uses (times and coordinates well below 1e9).
static constexpr double kGridTol = 1e-3;

int64_t real_to_grid(double v) {
    if (!std::isfinite(v)) throw UnrepresentableValue("non-finite real");
    double scaled = v * kRealScale;
    if (std::abs(scaled) > 9.2e18)
        throw UnrepresentableValue("real out of representable range");
    int64_t n = std::llround(scaled);
    if (std::abs(scaled - static_cast<double>(n)) > kGridTol)
        throw UnrepresentableValue("real not on the 1e-6 grid: " +
                                   std::to_string(v));
    return n;
}

double grid_to_real(int64_t n) { return static_cast<double>(n) / kRealScale; }

bool on_grid(double v) {
    if (!std::isfinite(v)) return false;
    double scaled = v * kRealScale;
    if (std::abs(scaled) > 9.2e18) return false;
    return std::abs(scaled - std::round(scaled)) <= kGridTol;
}

void Encoder::u16(uint16_t v) {
    u8(static_cast<uint8_t>(v >> 8));
    u8(static_cast<uint8_t>(v & 0xff));
}

void Encoder::u32(uint32_t v) {
    for (int i = 3; i >= 0; --i) u8(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

void Encoder::u64(uint64_t v) {
    for (int i = 7; i >= 0; --i) u8(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

void Encoder::str(std::string_view s) {
    u32(static_cast<uint32_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
}

void Encoder::blob(std::span<const uint8_t> data) {
    u32(static_cast<uint32_t>(data.size()));
    raw(data);
}

uint8_t Decoder::u8() { return *take(1); }

uint16_t Decoder::u16() {
    const uint8_t* p = take(2);
    return static_cast<uint16_t>((p[0] << 8) | p[1]);
}

uint32_t Decoder::u32() {
    const uint8_t* p = take(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | p[i];
    return v;
}

uint64_t Decoder::u64() {
    const uint8_t* p = take(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

bool Decoder::boolean() {
    uint8_t v = u8();
    if (v > 1) throw DecodeError("bad boolean");
    return v == 1;
}

std::string Decoder::str() {
    uint32_t n = u32();
    const uint8_t* p = take(n);
    return std::string(reinterpret_cast<const char*>(p), n);
}

Hash256 Decoder::hash() {
    const uint8_t* p = take(32);
    Hash256 h;
    std::copy(p, p + 32, h.bytes.begin());
    return h;
}

std::vector<uint8_t> Decoder::blob() {
    uint32_t n = u32();
    const uint8_t* p = take(n);
    return std::vector<uint8_t>(p, p + n);
}

}  // namespace aam::codec
