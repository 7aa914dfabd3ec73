#include "mova/proof.hpp"

#include "mova/error.hpp"

namespace mova {

ProofPoints generator_points(const PublicKey& pk)
{
    return ProofPoints{key_points(pk), pk.y_gen};
}

ProofPoints signature_points(const PublicKey& pk, std::string_view message, const Signature& claimed)
{
    if (claimed.bits.size() != pk.params.l_sig) {
        throw DomainError("claimed signature has the wrong length");
    }
    return ProofPoints{message_points(message, pk), claimed.bits};
}

ProofPoints confirmation_points(const PublicKey& pk, std::string_view message, const Signature& claimed)
{
    ProofPoints points = generator_points(pk);
    ProofPoints mess = signature_points(pk, message, claimed);
    points.x.insert(points.x.end(), mess.x.begin(), mess.x.end());
    points.y.insert(points.y.end(), mess.y.begin(), mess.y.end());
    return points;
}

}  // namespace mova
