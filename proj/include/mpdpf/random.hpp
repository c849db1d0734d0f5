#pragma once

#include "mpdpf/algebra.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <span>

namespace mpdpf {

namespace detail {
class AesCtrKeystream;
}

/// Randomness injected into key generation. Not thread-safe; one per caller.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    std::uint64_t next_u64();
    /// Uniform in [0, bound) by rejection sampling.
    std::uint64_t uniform_below(std::uint64_t bound);
    FieldElement uniform_element(const Modulus &modulus);
};

/// OS entropy via the OpenSSL CSPRNG.
class SystemRandom final : public RandomSource {
public:
    void fill(std::span<std::uint8_t> out) override;
};

/// Reproducible AES-CTR stream keyed from a 64-bit seed. Used for `--seed`
/// runs with production primitives.
class SeededDrbg final : public RandomSource {
public:
    explicit SeededDrbg(std::uint64_t seed);
    ~SeededDrbg() override;
    SeededDrbg(SeededDrbg &&) noexcept;
    SeededDrbg &operator=(SeededDrbg &&) noexcept;

    void fill(std::span<std::uint8_t> out) override;

private:
    std::unique_ptr<detail::AesCtrKeystream> stream_;
};

/// Insecure mt19937_64 stream for test fixtures.
class DeterministicRandom final : public RandomSource {
public:
    explicit DeterministicRandom(std::uint64_t seed) : engine_(seed) {}
    void fill(std::span<std::uint8_t> out) override;

private:
    std::mt19937_64 engine_;
};

} // namespace mpdpf
