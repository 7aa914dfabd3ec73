#include "mova/channel.hpp"

#include <algorithm>

#include <map>
#include <memory>
#include <sstream>

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "mova/hash.hpp"
#include "mova/keys.hpp"

namespace mova {

namespace {

// RFC 2409 second Oakley group.
constexpr std::string_view kModp1024 =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1"
    "29024E088A67CC74020BBEA63B139B22514A08798E3404DD"
    "EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245"
    "E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE65381"
    "FFFFFFFFFFFFFFFF";

constexpr std::string_view kDhPublicFile = "dhKpPub.key";
constexpr std::string_view kDhPrivateFile = "dhKpPriv.key";

std::map<std::string, std::string> parse_lines(std::string_view text)
{
    std::map<std::string, std::string> fields;
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
            throw ChannelError("dh key file: malformed line");
        }
        fields[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return fields;
}

BigInt hex_at(const std::map<std::string, std::string>& fields, const std::string& name)
{
    auto it = fields.find(name);
    if (it == fields.end()) {
        throw ChannelError("dh key file: missing field '" + name + "'");
    }
    try {
        return from_hex(it->second);
    } catch (const std::invalid_argument&) {
        throw ChannelError("dh key file: field '" + name + "' is not hex");
    }
}

void check_group(const BigInt& p, const BigInt& g)
{
    const DhGroup& group = DhGroup::modp1024();
    if (p != group.p || g != group.g) {
        throw ChannelError("dh key file: unexpected group parameters");
    }
}

BigInt private_exponent(const BigInt& p, RandomSource& rng)
{
    // Uniform in [2, p-2].
    return rng.below(p - 3) + 2;
}

struct CipherCtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

}  // namespace

const DhGroup& DhGroup::modp1024()
{
    static const DhGroup group{from_hex(kModp1024), BigInt(2)};
    return group;
}

DhStaticKeyPair dh_server_static(RandomSource& rng)
{
    const DhGroup& group = DhGroup::modp1024();
    DhStaticKeyPair kp;
    kp.p = group.p;
    kp.g = group.g;
    kp.a = private_exponent(group.p, rng);
    kp.pub = pow_mod(group.g, kp.a, group.p);
    return kp;
}

DhEphemeral dh_ephemeral(RandomSource& rng)
{
    const DhGroup& group = DhGroup::modp1024();
    DhEphemeral eph;
    eph.x = private_exponent(group.p, rng);
    eph.pub = pow_mod(group.g, eph.x, group.p);
    return eph;
}

std::string format_dh_public(const DhPublicKey& key)
{
    return "p=" + to_hex(key.p) + "\ng=" + to_hex(key.g) + "\nA=" + to_hex(key.pub) + "\n";
}

std::string format_dh_private(const DhStaticKeyPair& key)
{
    return "p=" + to_hex(key.p) + "\ng=" + to_hex(key.g) + "\na=" + to_hex(key.a) + "\n";
}

DhPublicKey parse_dh_public(std::string_view text)
{
    auto fields = parse_lines(text);
    DhPublicKey key{hex_at(fields, "p"), hex_at(fields, "g"), hex_at(fields, "A")};
    check_group(key.p, key.g);
    if (key.pub <= 1 || key.pub >= key.p - 1) {
        throw ChannelError("dh key file: public value out of range");
    }
    return key;
}

DhStaticKeyPair parse_dh_private(std::string_view text)
{
    auto fields = parse_lines(text);
    DhStaticKeyPair kp;
    kp.p = hex_at(fields, "p");
    kp.g = hex_at(fields, "g");
    kp.a = hex_at(fields, "a");
    check_group(kp.p, kp.g);
    if (kp.a < 2 || kp.a > kp.p - 2) {
        throw ChannelError("dh key file: private exponent out of range");
    }
    kp.pub = pow_mod(kp.g, kp.a, kp.p);
    return kp;
}

DhStaticKeyPair dh_load_or_create(const std::filesystem::path& dir, RandomSource& rng)
{
    const auto pub_path = dir / kDhPublicFile;
    const auto priv_path = dir / kDhPrivateFile;
    const bool have_pub = std::filesystem::exists(pub_path);
    const bool have_priv = std::filesystem::exists(priv_path);
    if (!have_pub && !have_priv) {
        DhStaticKeyPair kp = dh_server_static(rng);
        write_text_file_atomic(priv_path, format_dh_private(kp));
        write_text_file_atomic(pub_path, format_dh_public({kp.p, kp.g, kp.pub}));
        return kp;
    }
    if (!have_pub || !have_priv) {
        throw ChannelError("dh key files incomplete in " + dir.string());
    }
    DhStaticKeyPair kp;
    DhPublicKey pub;
    try {
        kp = parse_dh_private(read_text_file(priv_path));
        pub = parse_dh_public(read_text_file(pub_path));
    } catch (const FormatError& e) {
        throw ChannelError(e.what());
    }
    if (pub.pub != kp.pub) {
        throw ChannelError("dh key files do not match each other");
    }
    return kp;
}

SessionKeys dh_agree(const BigInt& my_private, const BigInt& their_public, const BigInt& p, Role role)
{
    if (their_public <= 1 || their_public >= p - 1) {
        throw ChannelError("degenerate Diffie-Hellman public value");
    }
    BigInt shared = pow_mod(their_public, my_private, p);
    Digest digest = sha256(to_bytes(shared));
    SessionKeys keys;
    std::copy_n(digest.begin(), kAesKeyBytes, keys.aes_key.begin());
    std::copy_n(digest.begin() + kAesKeyBytes, kMacKeyBytes, keys.mac_key.begin());
    keys.role = role;
    return keys;
}

Digest frame_tag(const SessionKeys& keys, const Frame& frame)
{
    Bytes data(frame.iv.begin(), frame.iv.end());
    data.insert(data.end(), frame.ciphertext.begin(), frame.ciphertext.end());
    Digest tag{};
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), keys.mac_key.data(), static_cast<int>(keys.mac_key.size()), data.data(), data.size(),
             tag.data(), &len) == nullptr ||
        len != tag.size()) {
        throw ChannelError("mac computation failed");
    }
    return tag;
}

Frame seal(const SessionKeys& keys, ByteView plaintext, RandomSource& rng)
{
    Frame frame;
    rng.fill(frame.iv);
    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_cbc(), nullptr, keys.aes_key.data(),
                                   frame.iv.data()) != 1) {
        throw ChannelError("cipher init failed");
    }
    frame.ciphertext.resize(plaintext.size() + kIvBytes);
    int len1 = 0;
    int len2 = 0;
    if (EVP_EncryptUpdate(ctx.get(), frame.ciphertext.data(), &len1, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1 ||
        EVP_EncryptFinal_ex(ctx.get(), frame.ciphertext.data() + len1, &len2) != 1) {
        throw ChannelError("encryption failed");
    }
    frame.ciphertext.resize(static_cast<std::size_t>(len1 + len2));
    frame.tag = frame_tag(keys, frame);
    return frame;
}

Bytes unseal(const SessionKeys& keys, const Frame& frame)
{
    if (frame.ciphertext.empty() || frame.ciphertext.size() % kIvBytes != 0) {
        throw ChannelError("ciphertext is not a whole number of blocks");
    }
    const Digest expected = frame_tag(keys, frame);
    if (CRYPTO_memcmp(expected.data(), frame.tag.data(), expected.size()) != 0) {
        throw ChannelError("frame authentication failed");
    }
    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_cbc(), nullptr, keys.aes_key.data(),
                                   frame.iv.data()) != 1) {
        throw ChannelError("cipher init failed");
    }
    Bytes out(frame.ciphertext.size() + kIvBytes);
    int len1 = 0;
    int len2 = 0;
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &len1, frame.ciphertext.data(),
                          static_cast<int>(frame.ciphertext.size())) != 1) {
        throw ChannelError("decryption failed");
    }
    if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len1, &len2) != 1) {
        throw ChannelError("bad padding");
    }
    out.resize(static_cast<std::size_t>(len1 + len2));
    return out;
}

Bytes encode_frame(const Frame& frame)
{
    const auto len = static_cast<std::uint32_t>(kIvBytes + frame.ciphertext.size() + kTagBytes);
    Bytes out;
    out.reserve(4 + len);
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(len >> shift));
    }
    out.insert(out.end(), frame.iv.begin(), frame.iv.end());
    out.insert(out.end(), frame.ciphertext.begin(), frame.ciphertext.end());
    out.insert(out.end(), frame.tag.begin(), frame.tag.end());
    return out;
}

void write_frame(Socket& socket, const Frame& frame)
{
    socket.write_all(encode_frame(frame));
}

Frame read_frame(Socket& socket)
{
    std::array<std::uint8_t, 4> header{};
    socket.read_exact(header);
    const std::uint32_t len = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                              (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
    if (len > kMaxFrameBytes || len < 2 * kIvBytes + kTagBytes || (len - kIvBytes - kTagBytes) % kIvBytes != 0) {
        throw ChannelError("malformed frame length");
    }
    Frame frame;
    socket.read_exact(frame.iv);
    frame.ciphertext = socket.read_exact(len - kIvBytes - kTagBytes);
    socket.read_exact(frame.tag);
    return frame;
}

void SecureChannel::send(ByteView plaintext)
{
    write_frame(socket_, seal(keys_, plaintext, rng_));
}

Bytes SecureChannel::receive()
{
    return unseal(keys_, read_frame(socket_));
}

}  // namespace mova
