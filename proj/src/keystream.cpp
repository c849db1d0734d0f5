#include "keystream.hpp"

#include "mpdpf/errors.hpp"

#include <algorithm>
#include <cstring>

namespace mpdpf::detail {

Sha256Digest derive_key(std::string_view label, std::uint8_t tag, std::span<const std::uint8_t> data) {
    Sha256Digest digest{};
    EVP_MD_CTX *md = EVP_MD_CTX_new();
    if (md == nullptr) throw InternalError("EVP_MD_CTX_new failed");
    unsigned len = 0;
    const bool ok = EVP_DigestInit_ex(md, EVP_sha256(), nullptr) == 1 &&
                    EVP_DigestUpdate(md, label.data(), label.size()) == 1 &&
                    EVP_DigestUpdate(md, &tag, 1) == 1 &&
                    EVP_DigestUpdate(md, data.data(), data.size()) == 1 &&
                    EVP_DigestFinal_ex(md, digest.data(), &len) == 1;
    EVP_MD_CTX_free(md);
    if (!ok || len != digest.size()) throw InternalError("SHA-256 failed");
    return digest;
}

AesCtrKeystream::AesCtrKeystream(const Sha256Digest &key) : ctx_(EVP_CIPHER_CTX_new()) {
    if (!ctx_) throw InternalError("EVP_CIPHER_CTX_new failed");
    const std::array<std::uint8_t, 16> iv{};
    if (EVP_EncryptInit_ex(ctx_.get(), EVP_aes_256_ctr(), nullptr, key.data(), iv.data()) != 1) {
        throw InternalError("AES-256-CTR init failed");
    }
}

void AesCtrKeystream::refill() {
    static const std::array<std::uint8_t, 4096> zeros{};
    int produced = 0;
    if (EVP_EncryptUpdate(ctx_.get(), buffer_.data(), &produced, zeros.data(), static_cast<int>(zeros.size())) != 1 ||
        produced != static_cast<int>(buffer_.size())) {
        throw InternalError("AES-256-CTR keystream failed");
    }
    pos_ = 0;
}

void AesCtrKeystream::read(std::span<std::uint8_t> out) {
    std::size_t done = 0;
    while (done < out.size()) {
        if (pos_ == buffer_.size()) refill();
        const std::size_t n = std::min(out.size() - done, buffer_.size() - pos_);
        std::memcpy(out.data() + done, buffer_.data() + pos_, n);
        pos_ += n;
        done += n;
    }
}

} // namespace mpdpf::detail
