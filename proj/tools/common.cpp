#include "common.hpp"

#include <iostream>

namespace mova::tools {

void ConnectionFlags::add_to(CLI::App& app)
{
    app.add_option("--server", server, "Signer address host:port")->capture_default_str();
    app.add_option("--state", state, "Device state file")->capture_default_str();
    app.add_option("--dh-pub", dh_pub, "Server dhKpPub.key to pin instead of trusting the first registration");
}

DeviceState load_state(const ConnectionFlags& flags)
{
    DeviceState state = DeviceState::load(flags.state);
    if (state.server != flags.server) {
        if (!state.server.empty()) {
            std::cerr << "state file belongs to " << state.server << "; registering with " << flags.server << '\n';
        }
        state.reset_for(flags.server);
    }
    return state;
}

SessionOptions session_options(const ConnectionFlags& flags)
{
    SessionOptions options;
    auto [host, port] = parse_endpoint(flags.server);
    options.host = host;
    options.port = port;
    if (!flags.dh_pub.empty()) {
        options.dh_server_public = parse_dh_public(read_text_file(flags.dh_pub)).pub;
    }
    return options;
}

}  // namespace mova::tools
