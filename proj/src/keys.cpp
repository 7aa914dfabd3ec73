#include "mova/keys.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "mova/error.hpp"
#include "mova/hash.hpp"
#include "mova/legendre.hpp"

namespace mova {

namespace {

void put_be32(Sha256& h, std::uint32_t v)
{
    const std::uint8_t raw[4] = {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                                 static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    h.update(raw);
}

using FieldMap = std::map<std::string, std::string, std::less<>>;

FieldMap parse_fields(std::string_view text)
{
    FieldMap fields;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw FormatError("key file: malformed line '" + line + "'");
        }
        auto [it, inserted] = fields.emplace(line.substr(0, eq), line.substr(eq + 1));
        if (!inserted) {
            throw FormatError("key file: duplicate field '" + it->first + "'");
        }
    }
    return fields;
}

const std::string& field(const FieldMap& fields, std::string_view name)
{
    auto it = fields.find(name);
    if (it == fields.end() || it->second.empty()) {
        throw FormatError("key file: missing field '" + std::string(name) + "'");
    }
    return it->second;
}

BigInt hex_field(const FieldMap& fields, std::string_view name)
{
    try {
        return from_hex(field(fields, name));
    } catch (const std::invalid_argument&) {
        throw FormatError("key file: field '" + std::string(name) + "' is not hex");
    }
}

std::size_t count_field(const FieldMap& fields, std::string_view name)
{
    BigInt v = hex_field(fields, name);
    if (v <= 0 || v > 1'000'000) {
        throw FormatError("key file: field '" + std::string(name) + "' out of range");
    }
    return v.get_ui();
}

}  // namespace

PrivateKey::PrivateKey(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q))
{
    if (p_ < 3 || q_ < 3 || mpz_even_p(p_.get_mpz_t()) || mpz_even_p(q_.get_mpz_t())) {
        throw DomainError("private key: primes must be odd");
    }
    if (p_ == q_) {
        throw DomainError("private key: primes must be distinct");
    }
    if (!is_probable_prime(p_) || !is_probable_prime(q_)) {
        throw DomainError("private key: factors must be prime");
    }
    n_ = p_ * q_;
    half_ = (p_ - 1) / 2;
}

std::vector<BigInt> derive_elements(ByteView seed, std::string_view label, std::size_t count,
                                    const BigInt& n)
{
    if (count == 0) {
        throw DomainError("derive_elements: count must be positive");
    }
    if (n < 3) {
        throw DomainError("derive_elements: modulus too small");
    }
    const std::size_t want_bytes = (bit_length(n) + 64 + 7) / 8;
    std::vector<BigInt> out;
    out.reserve(count);
    std::uint32_t candidate = 0;
    while (out.size() < count) {
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < kMaxDeriveRetries; ++attempt, ++candidate) {
            Bytes material;
            material.reserve(want_bytes + 32);
            for (std::uint32_t j = 0; material.size() < want_bytes; ++j) {
                Sha256 h;
                h.update(seed).update(label);
                put_be32(h, candidate);
                put_be32(h, j);
                Digest block = h.finish();
                material.insert(material.end(), block.begin(), block.end());
            }
            material.resize(want_bytes);
            BigInt x = from_bytes(material) % n;
            if (x > 1 && gcd(x, n) == 1) {
                out.push_back(std::move(x));
                ++candidate;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw DomainError("derive_elements: rejection sampling did not terminate");
        }
    }
    return out;
}

int homomorphism(const BigInt& x, const PrivateKey& sk)
{
    BigInt reduced = x % sk.n();
    if (reduced < 0) {
        reduced += sk.n();
    }
    if (reduced == 0 || gcd(reduced, sk.n()) != 1) {
        throw DomainError("invalid element");
    }
    return legendre_euler(reduced % sk.p(), sk.p(), sk.half());
}

BigInt random_prime(std::size_t bits, RandomSource& rng)
{
    const std::size_t max_candidates = 400 * bits + 1000;
    for (std::size_t i = 0; i < max_candidates; ++i) {
        BigInt candidate = rng.exact_bits(bits);
        mpz_setbit(candidate.get_mpz_t(), 0);
        if (bits >= 8) {
            // top two bits set: the product of two such primes has exactly 2*bits bits
            mpz_setbit(candidate.get_mpz_t(), bits - 2);
        }
        if (candidate > 2 && is_probable_prime(candidate)) {
            return candidate;
        }
    }
    throw DomainError("random_prime: no prime found within the candidate budget");
}

KeyPair make_keypair(const DomainParams& params, const BigInt& p, const BigInt& q, Bytes seed)
{
    params.validate();
    PrivateKey sk(p, q);
    PublicKey pk;
    pk.n = sk.n();
    pk.d = 2;
    pk.k = std::move(seed);
    pk.params = params;
    auto x_gen = derive_elements(pk.k, kKeyLabel, params.l_key, pk.n);
    pk.y_gen.reserve(x_gen.size());
    for (const auto& x : x_gen) {
        pk.y_gen.push_back(sign_to_bit(homomorphism(x, sk)));
    }
    return KeyPair{std::move(pk), std::move(sk)};
}

KeyPair keygen(const DomainParams& params, RandomSource& rng)
{
    params.validate();
    constexpr int kMaxAttempts = 16;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        BigInt p = random_prime(params.modulus_bits, rng);
        BigInt q = random_prime(params.modulus_bits, rng);
        if (p == q) {
            continue;
        }
        return make_keypair(params, p, q, rng.bytes(kSeedBytes));
    }
    throw DomainError("keygen: could not draw two distinct primes");
}

std::vector<BigInt> key_points(const PublicKey& pk)
{
    return derive_elements(pk.k, kKeyLabel, pk.params.l_key, pk.n);
}

std::string format_public_key(const PublicKey& pk)
{
    std::ostringstream out;
    out << "n=" << to_hex(pk.n) << '\n'
        << "d=" << to_hex(BigInt(pk.d)) << '\n'
        << "k=" << bytes_to_hex(pk.k) << '\n'
        << "ygen=" << bytes_to_hex(pack_bits(pk.y_gen)) << '\n'
        << "lkey=" << to_hex(BigInt(static_cast<unsigned long>(pk.params.l_key))) << '\n'
        << "lsig=" << to_hex(BigInt(static_cast<unsigned long>(pk.params.l_sig))) << '\n'
        << "icon=" << to_hex(BigInt(static_cast<unsigned long>(pk.params.i_con))) << '\n'
        << "iden=" << to_hex(BigInt(static_cast<unsigned long>(pk.params.i_den))) << '\n';
    return out.str();
}

PublicKey parse_public_key(std::string_view text)
{
    FieldMap fields = parse_fields(text);
    PublicKey pk;
    pk.n = hex_field(fields, "n");
    if (pk.n < 15 || mpz_even_p(pk.n.get_mpz_t()) || is_probable_prime(pk.n)) {
        throw FormatError("public key: modulus must be odd and composite");
    }
    if (hex_field(fields, "d") != 2) {
        throw FormatError("public key: only d = 2 is supported");
    }
    pk.d = 2;
    try {
        pk.k = hex_to_bytes(field(fields, "k"));
    } catch (const std::invalid_argument&) {
        throw FormatError("public key: seed is not hex");
    }
    pk.params.l_key = count_field(fields, "lkey");
    pk.params.l_sig = count_field(fields, "lsig");
    pk.params.i_con = count_field(fields, "icon");
    pk.params.i_den = count_field(fields, "iden");
    pk.params.modulus_bits = (bit_length(pk.n) + 1) / 2;
    try {
        pk.y_gen = unpack_bits(hex_to_bytes(field(fields, "ygen")), pk.params.l_key);
    } catch (const std::invalid_argument&) {
        throw FormatError("public key: ygen does not hold lkey bits");
    }
    try {
        pk.params.validate();
    } catch (const DomainError& e) {
        throw FormatError(std::string("public key: ") + e.what());
    }
    return pk;
}

std::string format_private_key(const PrivateKey& sk)
{
    return "p=" + to_hex(sk.p()) + "\nq=" + to_hex(sk.q()) + "\n";
}

PrivateKey parse_private_key(std::string_view text)
{
    FieldMap fields = parse_fields(text);
    try {
        return PrivateKey(hex_field(fields, "p"), hex_field(fields, "q"));
    } catch (const DomainError& e) {
        throw FormatError(std::string("private key: ") + e.what());
    }
}

void check_keypair(const PublicKey& pk, const PrivateKey& sk)
{
    if (pk.n != sk.n()) {
        throw FormatError("key pair: modulus does not match the private factors");
    }
    auto x_gen = key_points(pk);
    for (std::size_t i = 0; i < x_gen.size(); ++i) {
        if (sign_to_bit(homomorphism(x_gen[i], sk)) != pk.y_gen[i]) {
            throw FormatError("key pair: y_gen does not match the private key");
        }
    }
}

std::string public_key_fingerprint(const PublicKey& pk)
{
    return bytes_to_hex(sha256(format_public_key(pk)));
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view text)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) {
            throw Error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace mova
