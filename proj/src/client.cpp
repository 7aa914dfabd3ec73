#include "mova/client.hpp"

#include "mova/proof.hpp"
#include "mova/wire.hpp"

namespace mova {

namespace {

using protocol::Step;
using protocol::Verdict;

SessionKeys handshake(Socket& socket, DeviceState& state, const SessionOptions& options)
{
    socket.set_timeout(options.io_timeout);
    socket.write_all(protocol::encode_hello(state.id));
    protocol::Ack ack = protocol::read_ack(socket);
    if (!ack.accepted()) {
        throw RefusedError("server refused connection: " + ack.reason());
    }

    std::optional<BigInt> server_public = options.dh_server_public ? options.dh_server_public
                                                                   : state.dh_server_public;
    if (!ack.data.empty()) {
        BigInt offered = from_bytes(ack.data);
        if (server_public && *server_public != offered) {
            throw ChannelError("server DH key differs from the pinned key");
        }
        server_public = offered;
    }
    if (!server_public) {
        throw ChannelError("no server DH key pinned; register first or pass the server's dhKpPub.key");
    }
    state.dh_server_public = server_public;

    OsRandom rng;
    DhEphemeral mine = dh_ephemeral(rng);
    protocol::write_dh_public(socket, mine.pub);
    return dh_agree(mine.x, *server_public, DhGroup::modp1024().p, Role::initiator);
}

}  // namespace

DeviceSession::DeviceSession(DeviceState& state, const SessionOptions& options)
    : socket_(connect_tcp(options.host, options.port, options.io_timeout)),
      channel_(socket_, handshake(socket_, state, options))
{
    protocol::Reply welcome = protocol::decode_reply(channel_.receive());
    if (welcome.tag != protocol::Tag::welcome) {
        throw ProtocolError("expected welcome from server");
    }
    ByteReader in(welcome.body);
    id_ = in.i64();
    in.expect_done();
    if (state.id != -1 && state.id != id_) {
        throw ProtocolError("server assigned a different device id");
    }
    state.id = id_;
}

protocol::Reply DeviceSession::request(const Bytes& message)
{
    channel_.send(message);
    protocol::Reply reply = protocol::decode_reply(channel_.receive());
    if (reply.tag == protocol::Tag::error) {
        ByteReader in(reply.body);
        throw ProtocolError("server error: " + in.text());
    }
    return reply;
}

PublicKey DeviceSession::get_key()
{
    protocol::Reply reply = request(protocol::encode_get_key());
    if (reply.tag != protocol::Tag::key) {
        throw ProtocolError("unexpected reply to key request");
    }
    ByteReader in(reply.body);
    std::string text = in.text();
    in.expect_done();
    return parse_public_key(text);
}

Signature DeviceSession::sign(std::string_view message)
{
    protocol::Reply reply = request(protocol::encode_sign(message));
    if (reply.tag != protocol::Tag::signature) {
        throw ProtocolError("unexpected reply to sign request");
    }
    ByteReader in(reply.body);
    Signature sig{in.bits()};
    in.expect_done();
    return sig;
}

protocol::ProofMessage DeviceSession::next_proof()
{
    return protocol::decode_proof(channel_.receive());
}

Verdict DeviceSession::verify(const PublicKey& pk, std::string_view message, const Signature& claimed,
                              RandomSource& rng)
{
    if (claimed.bits.size() != pk.params.l_sig) {
        throw DomainError("claimed signature has " + std::to_string(claimed.bits.size()) + " bits, expected " +
                          std::to_string(pk.params.l_sig));
    }
    protocol::Reply reply = request(protocol::encode_verify(message, claimed.bits));
    if (reply.tag != protocol::Tag::proceed) {
        throw ProtocolError("unexpected reply to verify request");
    }
    bool confirmed = false;
    Verdict verdict = confirm(pk, message, claimed, rng, confirmed);
    if (!confirmed) {
        verdict = deny(pk, message, claimed, rng);
    }
    channel_.send(protocol::encode_verdict(verdict));
    return verdict;
}

Verdict DeviceSession::confirm(const PublicKey& pk, std::string_view message, const Signature& claimed,
                               RandomSource& rng, bool& confirmed)
{
    auto [challenge, secret] = ghi_verifier_challenge(pk, confirmation_points(pk, message, claimed), pk.params.i_con, rng);
    channel_.send(protocol::encode_ghi_challenge(challenge));

    protocol::ProofMessage reply = next_proof();
    if (reply.step == Step::abort) {
        return Verdict::failed;  // prover will not confirm; denial follows
    }
    if (reply.step != Step::ghi_commit) {
        throw ProtocolError("confirmation: expected commitment");
    }
    Digest c = protocol::parse_commitment(reply.payload);
    channel_.send(protocol::encode_ghi_reveal(secret.reveal(c)));

    reply = next_proof();
    if (reply.step == Step::abort) {
        throw ProtocolError("confirmation aborted by server: " + protocol::parse_abort(reply.payload));
    }
    if (reply.step != Step::ghi_open) {
        throw ProtocolError("confirmation: expected opening");
    }
    GhiOpening opening = protocol::parse_ghi_open(reply.payload);
    if (ghi_verifier_check(secret, opening.w, c, opening.decommit)) {
        confirmed = true;
        return Verdict::valid;
    }
    channel_.send(protocol::encode_abort("confirmation check failed"));
    return Verdict::failed;
}

Verdict DeviceSession::deny(const PublicKey& pk, std::string_view message, const Signature& claimed,
                            RandomSource& rng)
{
    auto [challenge, secret] = coghi_verifier_challenge(pk, generator_points(pk),
                                                        signature_points(pk, message, claimed), pk.params.i_den, rng);
    channel_.send(protocol::encode_coghi_challenge(challenge));

    protocol::ProofMessage reply = next_proof();
    if (reply.step == Step::abort) {
        return Verdict::failed;
    }
    if (reply.step != Step::coghi_commit) {
        throw ProtocolError("denial: expected commitment");
    }
    Digest c = protocol::parse_commitment(reply.payload);
    channel_.send(protocol::encode_coghi_reveal(secret.reveal(c)));

    reply = next_proof();
    if (reply.step == Step::abort) {
        throw ProtocolError("denial aborted by server: " + protocol::parse_abort(reply.payload));
    }
    if (reply.step != Step::coghi_open) {
        throw ProtocolError("denial: expected opening");
    }
    CoGhiOpening opening = protocol::parse_coghi_open(reply.payload);
    return coghi_verifier_check(secret, opening.lambda, c, opening.decommit) ? Verdict::invalid : Verdict::failed;
}

}  // namespace mova
