#include "mpdpf/prg.hpp"

#include "keystream.hpp"
#include "mpdpf/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <variant>

namespace mpdpf {

namespace {

std::atomic<std::uint64_t> g_expansions{0};

class LcgStream {
public:
    LcgStream(std::uint8_t factor_index, std::span<const std::uint8_t> seed) {
        // FNV-1a over (factor index, seed bytes)
        state_ = 0xcbf29ce484222325ULL;
        auto mix = [this](std::uint8_t b) {
            state_ ^= b;
            state_ *= 0x100000001b3ULL;
        };
        mix(factor_index);
        for (auto b : seed) mix(b);
    }

    void read(std::span<std::uint8_t> out) {
        for (auto &b : out) {
            state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
            b = static_cast<std::uint8_t>(state_ >> 56);
        }
    }

private:
    std::uint64_t state_;
};

using ByteStream = std::variant<detail::AesCtrKeystream, LcgStream>;

ByteStream open_stream(const PrgSpec &spec, std::uint8_t factor_index, const Seed &seed) {
    switch (spec.algorithm) {
    case PrgAlgorithm::kAesCtr:
        return ByteStream(std::in_place_type<detail::AesCtrKeystream>,
                          detail::derive_key("mpdpf.prg.v1", factor_index, seed.bytes()));
    case PrgAlgorithm::kTestLcg:
        return ByteStream(std::in_place_type<LcgStream>, factor_index, seed.bytes());
    }
    throw ParameterError("unknown PRG algorithm tag");
}

void check_seed(const Seed &seed, const PrgSpec &spec) {
    if (spec.lambda == 0 || spec.lambda % 8 != 0) throw ParameterError("lambda must be a positive multiple of 8");
    if (seed.size() != spec.lambda / 8) throw ParameterError("seed length does not match lambda");
}

} // namespace

bool is_known_prg_algorithm(std::uint8_t tag) {
    return tag == static_cast<std::uint8_t>(PrgAlgorithm::kAesCtr) ||
           tag == static_cast<std::uint8_t>(PrgAlgorithm::kTestLcg);
}

bool Seed::is_zero() const {
    return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b == 0; });
}

FieldVector expand_prefix(const Seed &seed, const PrgSpec &spec, std::size_t count) {
    check_seed(seed, spec);
    count = std::min<std::size_t>(count, spec.output_len);
    g_expansions.fetch_add(1, std::memory_order_relaxed);

    FieldVector out(spec.modulus, count);
    for (std::size_t f = 0; f < spec.modulus.factor_count(); ++f) {
        const std::uint64_t q = spec.modulus.factor(f);
        const unsigned bits = bit_length_of_range(q);
        const unsigned width = byte_length_of_range(q);
        const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
        auto stream = open_stream(spec, static_cast<std::uint8_t>(f), seed);
        auto plane = out.plane(f);

        // Pull bytes in blocks to keep the variant dispatch out of the inner loop.
        std::array<std::uint8_t, 4096> block{};
        std::size_t pos = block.size();
        auto next_sample = [&]() {
            if (pos + width > block.size()) {
                const std::size_t keep = block.size() - pos;
                std::copy(block.begin() + static_cast<std::ptrdiff_t>(pos), block.end(), block.begin());
                std::visit([&](auto &s) { s.read(std::span(block).subspan(keep)); }, stream);
                pos = 0;
            }
            std::uint64_t v = 0;
            for (unsigned b = 0; b < width; ++b) v |= std::uint64_t{block[pos + b]} << (8 * b);
            pos += width;
            return v & mask;
        };

        for (std::size_t k = 0; k < count; ++k) {
            std::uint32_t tries = 0;
            std::uint64_t v = next_sample();
            while (v >= q) {
                if (++tries >= kMaxRejectionsPerElement) throw InternalError("PRG rejection sampling exceeded its cap");
                v = next_sample();
            }
            plane[k] = static_cast<std::uint32_t>(v);
        }
    }
    return out;
}

FieldVector expand(const Seed &seed, const PrgSpec &spec) { return expand_prefix(seed, spec, spec.output_len); }

Seed sample_seed(RandomSource &rng, unsigned lambda) {
    if (lambda == 0 || lambda % 8 != 0) throw ParameterError("lambda must be a positive multiple of 8");
    std::vector<std::uint8_t> bytes(lambda / 8);
    do {
        rng.fill(bytes);
    } while (std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; }));
    return Seed(std::move(bytes));
}

std::uint64_t prg_expansion_count() { return g_expansions.load(std::memory_order_relaxed); }
void reset_prg_expansion_count() { g_expansions.store(0, std::memory_order_relaxed); }

} // namespace mpdpf
