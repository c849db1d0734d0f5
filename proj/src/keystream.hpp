#pragma once

// Internal: AES-256-CTR keystream used by the production PRG and the seeded DRBG.

#include <openssl/evp.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

namespace mpdpf::detail {

using Sha256Digest = std::array<std::uint8_t, 32>;

/// SHA-256(label || tag || data).
Sha256Digest derive_key(std::string_view label, std::uint8_t tag, std::span<const std::uint8_t> data);

class AesCtrKeystream {
public:
    explicit AesCtrKeystream(const Sha256Digest &key);

    void read(std::span<std::uint8_t> out);

private:
    void refill();

    struct CtxDeleter {
        void operator()(EVP_CIPHER_CTX *ctx) const { EVP_CIPHER_CTX_free(ctx); }
    };
    std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter> ctx_;
    std::array<std::uint8_t, 4096> buffer_{};
    std::size_t pos_ = buffer_.size();
};

} // namespace mpdpf::detail
