#include "mova/hash.hpp"

#include <stdexcept>

#include <openssl/evp.h>

namespace mova {

struct Sha256::Ctx {
    EVP_MD_CTX* md = nullptr;
};

Sha256::Sha256() : ctx_(std::make_unique<Ctx>())
{
    ctx_->md = EVP_MD_CTX_new();
    if (ctx_->md == nullptr || EVP_DigestInit_ex(ctx_->md, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx_->md);
        throw std::runtime_error("Sha256: digest init failed");
    }
}

Sha256::~Sha256()
{
    EVP_MD_CTX_free(ctx_->md);
}

Sha256& Sha256::update(std::span<const std::uint8_t> data)
{
    if (!data.empty() && EVP_DigestUpdate(ctx_->md, data.data(), data.size()) != 1) {
        throw std::runtime_error("Sha256: update failed");
    }
    return *this;
}

Sha256& Sha256::update(std::string_view text)
{
    return update({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

Digest Sha256::finish()
{
    Digest out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_->md, out.data(), &len) != 1 || len != out.size()) {
        throw std::runtime_error("Sha256: finalize failed");
    }
    return out;
}

Digest sha256(std::span<const std::uint8_t> data)
{
    return Sha256().update(data).finish();
}

Digest sha256(std::string_view text)
{
    return Sha256().update(text).finish();
}

}  // namespace mova
