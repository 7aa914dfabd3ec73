#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "mova/bigint.hpp"
#include "mova/hash.hpp"
#include "mova/net.hpp"
#include "mova/random.hpp"

namespace mova {

class ChannelError : public Error {
public:
    using Error::Error;
};

/// The 1024-bit MODP group (safe prime, generator 2) used for every key agreement.
struct DhGroup {
    BigInt p;
    BigInt g;

    static const DhGroup& modp1024();
};

/// The server's semi-static key pair. `pub` is what devices hold as their trust anchor.
struct DhStaticKeyPair {
    BigInt p;
    BigInt g;
    BigInt a;
    BigInt pub;
};

/// Public half as distributed to devices.
struct DhPublicKey {
    BigInt p;
    BigInt g;
    BigInt pub;

    friend bool operator==(const DhPublicKey&, const DhPublicKey&) = default;
};

struct DhEphemeral {
    BigInt x;
    BigInt pub;
};

/// Fresh key pair over the fixed group; private exponent uniform in [2, p-2].
DhStaticKeyPair dh_server_static(RandomSource& rng);
DhEphemeral dh_ephemeral(RandomSource& rng);

/// Loads dhKpPub.key/dhKpPriv.key from `dir`, creating and persisting them on first use.
/// Throws ChannelError on a corrupt or inconsistent pair.
DhStaticKeyPair dh_load_or_create(const std::filesystem::path& dir, RandomSource& rng);

std::string format_dh_public(const DhPublicKey& key);
std::string format_dh_private(const DhStaticKeyPair& key);
DhPublicKey parse_dh_public(std::string_view text);
DhStaticKeyPair parse_dh_private(std::string_view text);

enum class Role { initiator, responder };

inline constexpr std::size_t kAesKeyBytes = 16;
inline constexpr std::size_t kIvBytes = 16;
inline constexpr std::size_t kMacKeyBytes = 16;
inline constexpr std::size_t kTagBytes = 32;
inline constexpr std::size_t kMaxFrameBytes = 1u << 20;

struct SessionKeys {
    std::array<std::uint8_t, kAesKeyBytes> aes_key{};
    std::array<std::uint8_t, kMacKeyBytes> mac_key{};
    Role role = Role::initiator;
};

/// shared = their_public^my_private mod p; aes_key = SHA-256(be(shared))[0..16),
/// mac_key = SHA-256(be(shared))[16..32).
/// Rejects their_public outside (1, p-1).
SessionKeys dh_agree(const BigInt& my_private, const BigInt& their_public, const BigInt& p, Role role);

struct Frame {
    std::array<std::uint8_t, kIvBytes> iv{};
    Bytes ciphertext;
    Digest tag{};
};

/// HMAC-SHA-256 under mac_key over iv || ciphertext.
Digest frame_tag(const SessionKeys& keys, const Frame& frame);

/// AES-128-CBC with PKCS#7 padding and a fresh IV per frame, then a tag over the result.
Frame seal(const SessionKeys& keys, ByteView plaintext, RandomSource& rng);
/// Throws ChannelError on a tag mismatch, malformed ciphertext or bad padding.
Bytes unseal(const SessionKeys& keys, const Frame& frame);

/// Wire form: be32(16 + len(ciphertext) + 32) || iv || ciphertext || tag.
Bytes encode_frame(const Frame& frame);
void write_frame(Socket& socket, const Frame& frame);
/// Rejects lengths above 1 MiB or not of the form 16 + 16k + 32 (k >= 1) before reading the body.
Frame read_frame(Socket& socket);

/// A socket plus session keys: every message after the handshake goes through here.
class SecureChannel {
public:
    SecureChannel(Socket& socket, SessionKeys keys) : socket_(socket), keys_(keys) {}

    void send(ByteView plaintext);
    Bytes receive();

    const SessionKeys& keys() const { return keys_; }

private:
    Socket& socket_;
    SessionKeys keys_;
    OsRandom rng_;
};

}  // namespace mova
