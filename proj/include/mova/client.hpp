#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "mova/channel.hpp"
#include "mova/device_state.hpp"
#include "mova/keys.hpp"
#include "mova/net.hpp"
#include "mova/protocol.hpp"
#include "mova/signing.hpp"

namespace mova {

/// The server refused the hello (banned, unknown, or registration not approved).
class RefusedError : public NetError {
public:
    using NetError::NetError;
};

/// The server answered a request with an error or broke the proof transcript.
class ProtocolError : public Error {
public:
    using Error::Error;
};

struct SessionOptions {
    std::string host;
    std::uint16_t port = 5000;
    /// Out-of-band copy of the server's DH public value; overrides what the state has pinned.
    std::optional<BigInt> dh_server_public;
    std::chrono::milliseconds io_timeout = std::chrono::seconds(120);
};

/// One authenticated, encrypted connection from a device to the server. Registers the device
/// when `state.id` is -1 (blocking until an administrator decides) and updates `state` with the
/// assigned id and pinned server key; the caller persists it.
class DeviceSession {
public:
    DeviceSession(DeviceState& state, const SessionOptions& options);
    DeviceSession(const DeviceSession&) = delete;
    DeviceSession& operator=(const DeviceSession&) = delete;

    std::int64_t id() const { return id_; }

    PublicKey get_key();
    Signature sign(std::string_view message);

    /// Confirmation, then denial if confirmation does not go through.
    protocol::Verdict verify(const PublicKey& pk, std::string_view message, const Signature& claimed,
                             RandomSource& rng);

    /// Raw channel access for test harnesses that script their own transcripts.
    SecureChannel& channel() { return channel_; }
    Socket& socket() { return socket_; }

private:
    protocol::Reply request(const Bytes& message);
    protocol::ProofMessage next_proof();
    protocol::Verdict confirm(const PublicKey& pk, std::string_view message, const Signature& claimed,
                              RandomSource& rng, bool& confirmed);
    protocol::Verdict deny(const PublicKey& pk, std::string_view message, const Signature& claimed,
                           RandomSource& rng);

    Socket socket_;
    SecureChannel channel_;
    std::int64_t id_ = -1;
};

}  // namespace mova
