#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "mova/server.hpp"

int main(int argc, char** argv)
{
    mova::ServerConfig config;
    std::uint64_t approval_seconds = 60;
    std::string data_dir = ".";

    CLI::App app{"MOVA ticket signer daemon"};
    app.add_option("--port", config.listen_port, "Device port (0 picks a free port)")->capture_default_str();
    app.add_option("--admin-port", config.admin_port, "Admin HTTP port (0 picks a free port)")->capture_default_str();
    app.add_option("--bind", config.bind_address, "Listen address")->capture_default_str();
    app.add_option("--data-dir", data_dir, "Key and registry directory")->capture_default_str();
    app.add_option("--ban-threshold", config.ban_threshold, "Failed verifications before a device is banned")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_flag("--auto-approve", config.auto_approve, "Approve registrations without an administrator");
    app.add_option("--approval-timeout", approval_seconds, "Seconds a registration waits for approval")
        ->capture_default_str();
    app.add_option("--modulus-bits", config.params.modulus_bits, "Prime size for a first-launch key")
        ->capture_default_str();
    app.add_flag("--no-admin", [&](std::int64_t) { config.enable_admin = false; }, "Do not serve the admin API");
    app.add_flag("--log-events", config.log_events, "Echo session events to stderr");
    CLI11_PARSE(app, argc, argv);

    config.data_dir = data_dir;
    config.approval_timeout = std::chrono::seconds(approval_seconds);

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    try {
        mova::Server server(config);
        server.start();
        std::cout << "listening port=" << server.port() << " admin_port=" << server.admin_port()
                  << " key=" << mova::public_key_fingerprint(server.public_key()) << std::endl;
        int received = 0;
        sigwait(&signals, &received);
        std::cerr << "shutting down\n";
        server.stop();
    } catch (const std::exception& e) {
        std::cerr << "mova-server: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
