#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "mova/bigint.hpp"

namespace mova {

/// Per-client persistent state, one JSON file:
///   {"id": 3, "server": "127.0.0.1:5000", "dh_server_public": "<hex>"}
struct DeviceState {
    std::int64_t id = -1;
    std::string server;
    std::optional<BigInt> dh_server_public;

    /// Missing file gives a fresh state. Throws FormatError on a malformed file.
    static DeviceState load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    /// Forget the registration, e.g. when pointed at a different server.
    void reset_for(const std::string& endpoint);
};

}  // namespace mova
