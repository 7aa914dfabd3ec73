#pragma once

#include <memory>
#include <string>

#include "mova/keys.hpp"
#include "mova/random.hpp"
#include "mova/server.hpp"
#include "process.hpp"

namespace mova::test {

/// Key pair built once per process from a fixed seed. `modulus_bits` is the prime size.
const KeyPair& shared_keys(std::size_t modulus_bits = 256);

/// Random printable message of 1..max characters.
std::string random_message(RandomSource& rng, std::size_t max = 60);

Bits random_bits(std::size_t count, RandomSource& rng);

/// In-process server on ephemeral ports over a private data directory.
class TestServer {
public:
    explicit TestServer(std::size_t modulus_bits = 256, bool auto_approve = true,
                        std::uint64_t ban_threshold = 10);
    ~TestServer();

    Server& server() { return *server_; }
    std::string endpoint() const;
    std::string admin_endpoint() const;
    const std::filesystem::path& data_dir() const { return dir_.path(); }

private:
    TempDir dir_;
    std::unique_ptr<Server> server_;
};

}  // namespace mova::test
