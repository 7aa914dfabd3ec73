#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

namespace mova {

using Digest = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 over OpenSSL EVP.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(std::span<const std::uint8_t> data);
    Sha256& update(std::string_view text);
    Digest finish();

private:
    struct Ctx;
    std::unique_ptr<Ctx> ctx_;
};

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view text);

}  // namespace mova
