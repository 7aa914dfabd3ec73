#pragma once

// Device <-> server wire protocol.
//
// Cleartext handshake:
//   device -> server   hello     be64 signed device id (-1 = register)
//   server -> device   ack       be32 port || be32 len || data
//                                port != 0: accepted; data is the server's static DH public value
//                                           for a fresh registration (pinned by the device), else empty
//                                port == 0: refused, data is an ASCII reason; connection closes
//   device -> server   dh        be32 len || big-endian ephemeral public value
//   server -> device   sealed    Welcome(assigned id)
//
// A verify request is answered with Proceed (or Error); the device then drives the proofs
// and closes the exchange with a verdict or an abort.
//
// Every later message is one sealed frame holding `tag || body`. Proof messages carry a
// step number so either side detects a desynchronized transcript.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mova/coghi.hpp"
#include "mova/ghi.hpp"
#include "mova/net.hpp"
#include "mova/wire.hpp"

namespace mova::protocol {

enum class Tag : std::uint8_t {
    get_key = 'k',
    sign = 's',
    verify = 'v',
    key = 'K',
    signature = 'S',
    error = 'E',
    welcome = 'W',
    proof = 'p',
    proceed = 'P',
};

enum class Step : std::uint8_t {
    ghi_challenge = 1,
    ghi_commit = 2,
    ghi_reveal = 3,
    ghi_open = 4,
    coghi_challenge = 11,
    coghi_commit = 12,
    coghi_reveal = 13,
    coghi_open = 14,
    verdict = 32,
    abort = 0xF0,
};

enum class Verdict : std::uint8_t { valid = 0, invalid = 1, failed = 2 };

inline constexpr std::int64_t kUnregisteredId = -1;

// --- cleartext handshake
Bytes encode_hello(std::int64_t id);
std::int64_t decode_hello(ByteView data);

struct Ack {
    std::uint32_t port = 0;
    Bytes data;

    bool accepted() const { return port != 0; }
    std::string reason() const { return std::string(data.begin(), data.end()); }
};
Bytes encode_ack(const Ack& ack);

std::int64_t read_hello(Socket& socket);
Ack read_ack(Socket& socket);
void write_dh_public(Socket& socket, const BigInt& value);
/// Rejects values wider than the 1024-bit group.
BigInt read_dh_public(Socket& socket);

// --- sealed messages
struct Request {
    Tag tag = Tag::get_key;
    std::string message;
    Bits claimed;
};

Bytes encode_get_key();
Bytes encode_sign(std::string_view message);
Bytes encode_verify(std::string_view message, const Bits& claimed);
/// Throws WireError for unknown tags or malformed bodies.
Request decode_request(ByteView data);

Bytes encode_key_reply(std::string_view key_text);
Bytes encode_signature_reply(const Bits& bits);
Bytes encode_error(std::string_view reason);
Bytes encode_welcome(std::int64_t id);
/// Server accepts a verify request; the device then opens the proof.
Bytes encode_proceed();

/// Any server reply: tag plus body reader.
struct Reply {
    Tag tag;
    Bytes body;
};
Reply decode_reply(ByteView data);

struct ProofMessage {
    Step step;
    Bytes payload;
};

Bytes encode_ghi_challenge(const GhiChallenge& challenge);
Bytes encode_commitment(Step step, const Digest& c);
Bytes encode_ghi_reveal(const GhiReveal& reveal);
Bytes encode_ghi_open(const GhiOpening& opening);
Bytes encode_coghi_challenge(const CoGhiChallenge& challenge);
Bytes encode_coghi_reveal(const CoGhiReveal& reveal);
Bytes encode_coghi_open(const CoGhiOpening& opening);
Bytes encode_verdict(Verdict verdict);
Bytes encode_abort(std::string_view reason);

/// Throws WireError unless `data` is a proof message.
ProofMessage decode_proof(ByteView data);

GhiChallenge parse_ghi_challenge(ByteView payload);
Digest parse_commitment(ByteView payload);
GhiReveal parse_ghi_reveal(ByteView payload);
GhiOpening parse_ghi_open(ByteView payload);
CoGhiChallenge parse_coghi_challenge(ByteView payload);
CoGhiReveal parse_coghi_reveal(ByteView payload);
CoGhiOpening parse_coghi_open(ByteView payload);
Verdict parse_verdict(ByteView payload);
std::string parse_abort(ByteView payload);

std::string_view verdict_name(Verdict verdict);

}  // namespace mova::protocol
