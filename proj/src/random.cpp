#include "mpdpf/random.hpp"

#include "keystream.hpp"
#include "mpdpf/errors.hpp"

#include <openssl/rand.h>

#include <array>
#include <bit>

namespace mpdpf {

std::uint64_t RandomSource::next_u64() {
    std::array<std::uint8_t, 8> bytes{};
    fill(bytes);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[static_cast<std::size_t>(i)];
    return v;
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("uniform_below needs a positive bound");
    if (bound == 1) return 0;
    const unsigned bits = static_cast<unsigned>(std::bit_width(bound - 1));
    const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    while (true) {
        const std::uint64_t v = next_u64() & mask;
        if (v < bound) return v;
    }
}

FieldElement RandomSource::uniform_element(const Modulus &modulus) {
    std::vector<std::uint64_t> residues(modulus.factor_count());
    for (std::size_t i = 0; i < residues.size(); ++i) residues[i] = uniform_below(modulus.factor(i));
    return FieldElement(modulus, std::move(residues));
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
        throw InternalError("OS entropy source failed");
    }
}

SeededDrbg::SeededDrbg(std::uint64_t seed) {
    std::array<std::uint8_t, 8> bytes{};
    for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    stream_ = std::make_unique<detail::AesCtrKeystream>(detail::derive_key("mpdpf.drbg.v1", 0, bytes));
}

SeededDrbg::~SeededDrbg() = default;
SeededDrbg::SeededDrbg(SeededDrbg &&) noexcept = default;
SeededDrbg &SeededDrbg::operator=(SeededDrbg &&) noexcept = default;

void SeededDrbg::fill(std::span<std::uint8_t> out) { stream_->read(out); }

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t v = engine_();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
            out[i] = static_cast<std::uint8_t>(v);
            v >>= 8;
        }
    }
}

} // namespace mpdpf
