#include <gtest/gtest.h>

#include <thread>

#include "mova/channel.hpp"
#include "mova/protocol.hpp"
#include "mova/wire.hpp"
#include "support/fixture.hpp"
#include "support/oracle.hpp"

using namespace mova;

namespace {

struct SocketPair {
    Socket client;
    Socket server;
};

SocketPair connected_pair()
{
    Listener listener("127.0.0.1", 0);
    SocketPair pair;
    std::thread t([&] { pair.server = listener.accept(); });
    pair.client = connect_tcp("127.0.0.1", listener.port());
    t.join();
    pair.client.set_timeout(std::chrono::seconds(10));
    pair.server.set_timeout(std::chrono::seconds(10));
    return pair;
}

SessionKeys fixed_keys(std::uint8_t fill)
{
    SessionKeys keys;
    keys.aes_key.fill(fill);
    return keys;
}

}  // namespace

TEST(Wire, RoundTrip)
{
    Bits bits{1, 0, 1, 1, 1};
    ByteWriter w;
    w.u8(7).u32(0xdeadbeef).i64(-1).text("hi").bigint(BigInt("123456789012345678901234567890")).bits(bits);
    w.bigints({BigInt(1), BigInt(0), BigInt(255)});
    ByteReader r(w.data());
    EXPECT_EQ(r.u8(), 7);
    EXPECT_EQ(r.u32(), 0xdeadbeefu);
    EXPECT_EQ(r.i64(), -1);
    EXPECT_EQ(r.text(), "hi");
    EXPECT_EQ(r.bigint(), BigInt("123456789012345678901234567890"));
    EXPECT_EQ(r.bits(), bits);
    EXPECT_EQ(r.bigints(), (std::vector<BigInt>{1, 0, 255}));
    EXPECT_TRUE(r.done());
}

TEST(Wire, TruncationAndTrailingBytes)
{
    Bytes data = ByteWriter().text("hello").take();
    for (std::size_t cut = 0; cut < data.size(); ++cut) {
        ByteReader r(ByteView(data).first(cut));
        EXPECT_THROW(r.text(), WireError);
    }
    data.push_back(0);
    ByteReader r(data);
    r.text();
    EXPECT_THROW(r.expect_done(), WireError);

    Bytes huge = ByteWriter().u32(0xffffffff).take();
    ByteReader h(huge);
    EXPECT_THROW(h.bytes(), WireError);
}

TEST(Protocol, HelloAndRequests)
{
    EXPECT_EQ(protocol::encode_hello(-1), Bytes(8, 0xff));
    EXPECT_EQ(protocol::decode_hello(protocol::encode_hello(42)), 42);
    EXPECT_THROW(protocol::decode_hello(protocol::encode_hello(-2)), WireError);

    auto req = protocol::decode_request(protocol::encode_verify("MOVA|a", Bits(20, 1)));
    EXPECT_EQ(req.tag, protocol::Tag::verify);
    EXPECT_EQ(req.message, "MOVA|a");
    EXPECT_EQ(req.claimed, Bits(20, 1));
    EXPECT_EQ(protocol::encode_get_key(), Bytes{'k'});
    EXPECT_THROW(protocol::decode_request(Bytes{'z'}), WireError);
    EXPECT_THROW(protocol::decode_request(Bytes{}), WireError);
}

TEST(Protocol, ProofMessagesRoundTrip)
{
    GhiChallenge ch{{BigInt(5), BigInt(99)}};
    auto msg = protocol::decode_proof(protocol::encode_ghi_challenge(ch));
    EXPECT_EQ(msg.step, protocol::Step::ghi_challenge);
    EXPECT_EQ(protocol::parse_ghi_challenge(msg.payload).u, ch.u);

    GhiOpening open{Bits{1, 0, 1}, {}};
    open.decommit[5] = 9;
    auto o = protocol::parse_ghi_open(protocol::decode_proof(protocol::encode_ghi_open(open)).payload);
    EXPECT_EQ(o.w, open.w);
    EXPECT_EQ(o.decommit, open.decommit);

    CoGhiReveal rev{{BigInt(3)}, Bits{1, 1, 0}};
    auto r = protocol::parse_coghi_reveal(protocol::decode_proof(protocol::encode_coghi_reveal(rev)).payload);
    EXPECT_EQ(r.r, rev.r);
    EXPECT_EQ(r.a, rev.a);

    auto v = protocol::decode_proof(protocol::encode_verdict(protocol::Verdict::invalid));
    EXPECT_EQ(protocol::parse_verdict(v.payload), protocol::Verdict::invalid);
    EXPECT_THROW(protocol::decode_proof(protocol::encode_get_key()), WireError);
}

TEST(Channel, ModpGroupIsSafePrime)
{
    const DhGroup& g = DhGroup::modp1024();
    EXPECT_EQ(bit_length(g.p), 1024u);
    EXPECT_EQ(g.g, 2);
    EXPECT_TRUE(is_probable_prime(g.p));
    EXPECT_TRUE(is_probable_prime((g.p - 1) / 2));
    EXPECT_EQ(to_hex(g.p).substr(0, 16), "ffffffffffffffff");
}

TEST(Channel, AgreementMatchesOracle)
{
    OsRandom rng;
    const DhGroup& g = DhGroup::modp1024();
    DhStaticKeyPair server = dh_server_static(rng);
    for (int i = 0; i < 100; ++i) {
        DhEphemeral device = dh_ephemeral(rng);
        SessionKeys a = dh_agree(device.x, server.pub, g.p, Role::initiator);
        SessionKeys b = dh_agree(server.a, device.pub, g.p, Role::responder);
        ASSERT_EQ(a.aes_key, b.aes_key);
        BigInt shared = pow_mod(device.pub, server.a, g.p);
        Bytes raw = to_bytes(shared);
        Bytes digest = test::oracle_sha256(std::string(raw.begin(), raw.end()));
        ASSERT_TRUE(std::equal(a.aes_key.begin(), a.aes_key.end(), digest.begin()));
        ASSERT_TRUE(std::equal(a.mac_key.begin(), a.mac_key.end(), digest.begin() + 16));
        ASSERT_EQ(a.mac_key, b.mac_key);
    }
}

TEST(Channel, AgreementRejectsDegenerateValues)
{
    OsRandom rng;
    const BigInt& p = DhGroup::modp1024().p;
    DhEphemeral e = dh_ephemeral(rng);
    for (const BigInt& bad : std::vector<BigInt>{BigInt(0), BigInt(1), BigInt(p - 1), p, BigInt(p + 1)}) {
        EXPECT_THROW(dh_agree(e.x, bad, p, Role::initiator), ChannelError);
    }
}

TEST(Channel, KeyFilesPersist)
{
    test::TempDir dir;
    OsRandom rng;
    DhStaticKeyPair first = dh_load_or_create(dir.path(), rng);
    DhStaticKeyPair second = dh_load_or_create(dir.path(), rng);
    EXPECT_EQ(first.a, second.a);
    EXPECT_EQ(first.pub, pow_mod(first.g, first.a, first.p));
    EXPECT_EQ(parse_dh_public(read_text_file(dir / "dhKpPub.key")).pub, first.pub);

    std::filesystem::remove(dir / "dhKpPriv.key");
    EXPECT_THROW(dh_load_or_create(dir.path(), rng), ChannelError);
}

TEST(Channel, KnownAesVector)
{
    SessionKeys keys;
    for (std::size_t i = 0; i < 16; ++i) {
        keys.aes_key[i] = static_cast<std::uint8_t>(i);
    }
    Frame frame;
    frame.ciphertext = hex_to_bytes("69c4e0d86a7b0430d8cdb78070b4c55a9e978e6d16b086570ef794ef97984232");
    EXPECT_THROW(unseal(keys, frame), ChannelError);
    frame.tag = frame_tag(keys, frame);
    EXPECT_EQ(unseal(keys, frame), hex_to_bytes("00112233445566778899aabbccddeeff"));
}

TEST(Channel, TagMatchesHmacOracle)
{
    OsRandom rng;
    SessionKeys keys = fixed_keys(5);
    rng.fill(keys.mac_key);
    Frame f = seal(keys, Bytes{9, 8, 7}, rng);
    Bytes covered(f.iv.begin(), f.iv.end());
    covered.insert(covered.end(), f.ciphertext.begin(), f.ciphertext.end());
    Bytes expected = test::oracle_hmac_sha256(Bytes(keys.mac_key.begin(), keys.mac_key.end()), covered);
    EXPECT_EQ(Bytes(f.tag.begin(), f.tag.end()), expected);

    Bytes wire = encode_frame(f);
    EXPECT_EQ(wire.size(), 4 + 16 + f.ciphertext.size() + 32);
    EXPECT_TRUE(std::equal(f.tag.begin(), f.tag.end(), wire.end() - 32));

    SessionKeys other = keys;
    other.mac_key[0] ^= 1;
    EXPECT_THROW(unseal(other, f), ChannelError);
}

TEST(Channel, SealUnsealAndFreshIv)
{
    OsRandom rng;
    SessionKeys keys = fixed_keys(3);
    for (std::size_t len : {0u, 1u, 15u, 16u, 17u, 1000u}) {
        Bytes pt = rng.bytes(len);
        Frame f1 = seal(keys, pt, rng);
        Frame f2 = seal(keys, pt, rng);
        EXPECT_EQ(f1.ciphertext.size(), (len / 16 + 1) * 16);
        EXPECT_NE(f1.iv, f2.iv);
        EXPECT_EQ(unseal(keys, f1), pt);
    }
}

TEST(Channel, WrongKeyFailsToParse)
{
    OsRandom rng;
    Bytes message = protocol::encode_welcome(5);
    int detected = 0;
    for (int i = 0; i < 200; ++i) {
        SessionKeys wrong;
        rng.fill(wrong.aes_key);
        Frame f = seal(fixed_keys(1), message, rng);
        try {
            Bytes pt = unseal(wrong, f);
            protocol::Reply r = protocol::decode_reply(pt);
            ByteReader in(r.body);
            if (r.tag != protocol::Tag::welcome || in.i64() != 5) {
                ++detected;
            }
        } catch (const Error&) {
            ++detected;
        }
    }
    EXPECT_EQ(detected, 200);
}

TEST(Channel, SingleByteCorruptionDetectedOverSocket)
{
    OsRandom rng;
    SessionKeys keys = fixed_keys(9);
    Bytes message = protocol::encode_sign("MOVA|Bern|Thun|2026-01-01|2|Ada");
    Bytes wire = encode_frame(seal(keys, message, rng));
    for (std::size_t pos = 4; pos < wire.size(); ++pos) {
        Bytes bad = wire;
        bad[pos] ^= static_cast<std::uint8_t>(1 + rng.below(255).get_ui());
        SocketPair pair = connected_pair();
        pair.client.write_all(bad);
        SecureChannel channel(pair.server, keys);
        EXPECT_THROW(channel.receive(), ChannelError) << "byte " << pos;
    }
}

TEST(Channel, FrameLengthValidation)
{
    for (std::uint32_t len : {0u, 16u, 17u, 40u, 48u, 63u, (1u << 20) + 48u}) {
        SocketPair pair = connected_pair();
        Bytes header = ByteWriter().u32(len).take();
        pair.client.write_all(header);
        EXPECT_THROW(read_frame(pair.server), ChannelError) << len;
    }
}

TEST(Channel, SecureChannelExchange)
{
    SocketPair pair = connected_pair();
    SessionKeys keys = fixed_keys(4);
    SecureChannel a(pair.client, keys);
    SecureChannel b(pair.server, keys);
    a.send(Bytes{1, 2, 3});
    EXPECT_EQ(b.receive(), (Bytes{1, 2, 3}));
    b.send(Bytes{});
    EXPECT_TRUE(a.receive().empty());
}

TEST(Net, PeerCloseIsNetError)
{
    SocketPair pair = connected_pair();
    pair.client.close();
    std::array<std::uint8_t, 4> buf{};
    EXPECT_THROW(pair.server.read_exact(buf), NetError);
}

TEST(Net, ParseEndpoint)
{
    auto [host, port] = parse_endpoint("example.org:5000");
    EXPECT_EQ(host, "example.org");
    EXPECT_EQ(port, 5000);
    EXPECT_THROW(parse_endpoint("nohost"), std::invalid_argument);
    EXPECT_THROW(parse_endpoint("h:99999"), std::invalid_argument);
    EXPECT_THROW(parse_endpoint("h:"), std::invalid_argument);
}
