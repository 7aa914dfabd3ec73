#include "mova/commitment.hpp"

#include <openssl/crypto.h>

#include "mova/error.hpp"

namespace mova {

Commitment commit(ByteView payload, RandomSource& rng)
{
    if (payload.empty()) {
        throw DomainError("commit: empty payload");
    }
    Commitment out;
    rng.fill(out.decommit);
    out.c = Sha256().update(payload).update(out.decommit).finish();
    return out;
}

bool open(ByteView payload, ByteView c, ByteView decommit)
{
    if (c.size() != Digest{}.size() || decommit.size() != kDecommitBytes) {
        return false;
    }
    Digest expected = Sha256().update(payload).update(decommit).finish();
    return CRYPTO_memcmp(expected.data(), c.data(), expected.size()) == 0;
}

}  // namespace mova
