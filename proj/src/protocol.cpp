#include "mova/protocol.hpp"

#include <array>

namespace mova::protocol {

namespace {

constexpr std::uint32_t kMaxReasonBytes = 1024;
constexpr std::uint32_t kMaxDhBytes = 128;

Bytes with_tag(Tag tag, ByteWriter body)
{
    Bytes out{static_cast<std::uint8_t>(tag)};
    const Bytes& data = body.data();
    out.insert(out.end(), data.begin(), data.end());
    return out;
}

Bytes proof(Step step, ByteWriter body)
{
    Bytes out{static_cast<std::uint8_t>(Tag::proof), static_cast<std::uint8_t>(step)};
    const Bytes& data = body.data();
    out.insert(out.end(), data.begin(), data.end());
    return out;
}

Decommit read_decommit(ByteReader& in)
{
    Bytes raw = in.raw(kDecommitBytes);
    Decommit out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

std::uint32_t read_be32(Socket& socket)
{
    std::array<std::uint8_t, 4> raw{};
    socket.read_exact(raw);
    return ByteReader(raw).u32();
}

}  // namespace

Bytes encode_hello(std::int64_t id)
{
    return ByteWriter().i64(id).take();
}

std::int64_t decode_hello(ByteView data)
{
    ByteReader in(data);
    std::int64_t id = in.i64();
    in.expect_done();
    if (id < kUnregisteredId) {
        throw WireError("invalid device id in hello");
    }
    return id;
}

Bytes encode_ack(const Ack& ack)
{
    return ByteWriter().u32(ack.port).bytes(ack.data).take();
}

std::int64_t read_hello(Socket& socket)
{
    return decode_hello(socket.read_exact(8));
}

Ack read_ack(Socket& socket)
{
    Ack ack;
    ack.port = read_be32(socket);
    const std::uint32_t len = read_be32(socket);
    if (len > kMaxReasonBytes) {
        throw WireError("handshake ack too long");
    }
    ack.data = socket.read_exact(len);
    return ack;
}

void write_dh_public(Socket& socket, const BigInt& value)
{
    socket.write_all(ByteWriter().bigint(value).take());
}

BigInt read_dh_public(Socket& socket)
{
    const std::uint32_t len = read_be32(socket);
    if (len == 0 || len > kMaxDhBytes) {
        throw WireError("Diffie-Hellman value has an invalid length");
    }
    return from_bytes(socket.read_exact(len));
}

Bytes encode_get_key()
{
    return with_tag(Tag::get_key, ByteWriter());
}

Bytes encode_sign(std::string_view message)
{
    return with_tag(Tag::sign, std::move(ByteWriter().text(message)));
}

Bytes encode_verify(std::string_view message, const Bits& claimed)
{
    return with_tag(Tag::verify, std::move(ByteWriter().text(message).bits(claimed)));
}

Request decode_request(ByteView data)
{
    ByteReader in(data);
    Request req;
    const auto tag = static_cast<Tag>(in.u8());
    req.tag = tag;
    switch (tag) {
    case Tag::get_key:
        break;
    case Tag::sign:
        req.message = in.text();
        break;
    case Tag::verify:
        req.message = in.text();
        req.claimed = in.bits();
        break;
    default:
        throw WireError("unknown request command");
    }
    in.expect_done();
    return req;
}

Bytes encode_key_reply(std::string_view key_text)
{
    return with_tag(Tag::key, std::move(ByteWriter().text(key_text)));
}

Bytes encode_signature_reply(const Bits& bits)
{
    return with_tag(Tag::signature, std::move(ByteWriter().bits(bits)));
}

Bytes encode_error(std::string_view reason)
{
    return with_tag(Tag::error, std::move(ByteWriter().text(reason)));
}

Bytes encode_welcome(std::int64_t id)
{
    return with_tag(Tag::welcome, std::move(ByteWriter().i64(id)));
}

Bytes encode_proceed()
{
    return with_tag(Tag::proceed, ByteWriter());
}

Reply decode_reply(ByteView data)
{
    if (data.empty()) {
        throw WireError("empty reply");
    }
    return Reply{static_cast<Tag>(data[0]), Bytes(data.begin() + 1, data.end())};
}

Bytes encode_ghi_challenge(const GhiChallenge& challenge)
{
    return proof(Step::ghi_challenge, std::move(ByteWriter().bigints(challenge.u)));
}

Bytes encode_commitment(Step step, const Digest& c)
{
    return proof(step, std::move(ByteWriter().raw(c)));
}

Bytes encode_ghi_reveal(const GhiReveal& reveal)
{
    return proof(Step::ghi_reveal, std::move(ByteWriter().bigints(reveal.r).bits(reveal.a)));
}

Bytes encode_ghi_open(const GhiOpening& opening)
{
    return proof(Step::ghi_open, std::move(ByteWriter().bits(opening.w).raw(opening.decommit)));
}

Bytes encode_coghi_challenge(const CoGhiChallenge& challenge)
{
    return proof(Step::coghi_challenge, std::move(ByteWriter().bigints(challenge.u).bits(challenge.w)));
}

Bytes encode_coghi_reveal(const CoGhiReveal& reveal)
{
    return proof(Step::coghi_reveal, std::move(ByteWriter().bigints(reveal.r).bits(reveal.a)));
}

Bytes encode_coghi_open(const CoGhiOpening& opening)
{
    return proof(Step::coghi_open, std::move(ByteWriter().bits(opening.lambda).raw(opening.decommit)));
}

Bytes encode_verdict(Verdict verdict)
{
    return proof(Step::verdict, std::move(ByteWriter().u8(static_cast<std::uint8_t>(verdict))));
}

Bytes encode_abort(std::string_view reason)
{
    return proof(Step::abort, std::move(ByteWriter().text(reason)));
}

ProofMessage decode_proof(ByteView data)
{
    ByteReader in(data);
    if (static_cast<Tag>(in.u8()) != Tag::proof) {
        throw WireError("expected a proof message");
    }
    const auto step = static_cast<Step>(in.u8());
    switch (step) {
    case Step::ghi_challenge:
    case Step::ghi_commit:
    case Step::ghi_reveal:
    case Step::ghi_open:
    case Step::coghi_challenge:
    case Step::coghi_commit:
    case Step::coghi_reveal:
    case Step::coghi_open:
    case Step::verdict:
    case Step::abort:
        break;
    default:
        throw WireError("unknown proof step");
    }
    return ProofMessage{step, in.raw(in.remaining())};
}

GhiChallenge parse_ghi_challenge(ByteView payload)
{
    ByteReader in(payload);
    GhiChallenge out{in.bigints()};
    in.expect_done();
    return out;
}

Digest parse_commitment(ByteView payload)
{
    ByteReader in(payload);
    Bytes raw = in.raw(Digest{}.size());
    in.expect_done();
    Digest out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

GhiReveal parse_ghi_reveal(ByteView payload)
{
    ByteReader in(payload);
    GhiReveal out;
    out.r = in.bigints();
    out.a = in.bits();
    in.expect_done();
    return out;
}

GhiOpening parse_ghi_open(ByteView payload)
{
    ByteReader in(payload);
    GhiOpening out;
    out.w = in.bits();
    out.decommit = read_decommit(in);
    in.expect_done();
    return out;
}

CoGhiChallenge parse_coghi_challenge(ByteView payload)
{
    ByteReader in(payload);
    CoGhiChallenge out;
    out.u = in.bigints();
    out.w = in.bits();
    in.expect_done();
    return out;
}

CoGhiReveal parse_coghi_reveal(ByteView payload)
{
    ByteReader in(payload);
    CoGhiReveal out;
    out.r = in.bigints();
    out.a = in.bits();
    in.expect_done();
    return out;
}

CoGhiOpening parse_coghi_open(ByteView payload)
{
    ByteReader in(payload);
    CoGhiOpening out;
    out.lambda = in.bits();
    out.decommit = read_decommit(in);
    in.expect_done();
    return out;
}

Verdict parse_verdict(ByteView payload)
{
    ByteReader in(payload);
    const std::uint8_t v = in.u8();
    in.expect_done();
    if (v > static_cast<std::uint8_t>(Verdict::failed)) {
        throw WireError("unknown verdict");
    }
    return static_cast<Verdict>(v);
}

std::string parse_abort(ByteView payload)
{
    ByteReader in(payload);
    std::string reason = in.text();
    in.expect_done();
    return reason;
}

std::string_view verdict_name(Verdict verdict)
{
    switch (verdict) {
    case Verdict::valid:
        return "Valid";
    case Verdict::invalid:
        return "Invalid";
    case Verdict::failed:
        return "Failed";
    }
    return "Unknown";
}

}  // namespace mova::protocol
