#include "fixture.hpp"

#include <map>
#include <mutex>

namespace mova::test {

const KeyPair& shared_keys(std::size_t modulus_bits)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<KeyPair>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[modulus_bits];
    if (!slot) {
        DeterministicRandom rng(0x4d4f5641 + modulus_bits);
        DomainParams params;
        params.modulus_bits = modulus_bits;
        slot = std::make_unique<KeyPair>(keygen(params, rng));
    }
    return *slot;
}

std::string random_message(RandomSource& rng, std::size_t max)
{
    std::size_t len = 1 + static_cast<std::size_t>(rng.below(BigInt(static_cast<unsigned long>(max))).get_ui());
    std::string out;
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(static_cast<char>(0x20 + rng.below(95).get_ui()));
    }
    return out;
}

Bits random_bits(std::size_t count, RandomSource& rng)
{
    Bits out(count);
    for (auto& b : out) {
        b = rng.bit() ? 1 : 0;
    }
    return out;
}

TestServer::TestServer(std::size_t modulus_bits, bool auto_approve, std::uint64_t ban_threshold)
{
    ServerConfig config;
    config.listen_port = 0;
    config.admin_port = 0;
    config.auto_approve = auto_approve;
    config.ban_threshold = ban_threshold;
    config.data_dir = dir_.path();
    config.params.modulus_bits = modulus_bits;
    config.approval_timeout = std::chrono::seconds(10);
    server_ = std::make_unique<Server>(config);
    server_->start();
}

TestServer::~TestServer()
{
    server_->stop();
}

std::string TestServer::endpoint() const
{
    return "127.0.0.1:" + std::to_string(server_->port());
}

std::string TestServer::admin_endpoint() const
{
    return "127.0.0.1:" + std::to_string(server_->admin_port());
}

}  // namespace mova::test
