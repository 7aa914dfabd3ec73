#pragma once

#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "mova/client.hpp"

namespace mova::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitError = 2;

struct ConnectionFlags {
    std::string server = "127.0.0.1:5000";
    std::string state = "mova-device.json";
    std::string dh_pub;

    void add_to(CLI::App& app);
};

/// Loads the state file, resetting it when it belongs to a different server.
DeviceState load_state(const ConnectionFlags& flags);
SessionOptions session_options(const ConnectionFlags& flags);

}  // namespace mova::tools
