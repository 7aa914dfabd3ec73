#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "mova/channel.hpp"
#include "mova/events.hpp"
#include "mova/keys.hpp"
#include "mova/net.hpp"
#include "mova/registry.hpp"

namespace mova {

class AdminApi;

struct ServerConfig {
    std::string bind_address = "127.0.0.1";
    std::uint16_t listen_port = 5000;
    std::uint16_t admin_port = 5001;
    bool enable_admin = true;
    std::uint64_t ban_threshold = 10;
    bool auto_approve = false;
    std::filesystem::path data_dir = ".";
    std::chrono::milliseconds approval_timeout = std::chrono::seconds(60);
    std::chrono::milliseconds session_timeout = std::chrono::seconds(120);
    /// Parameters for a first-launch key generation; ignored when key files exist.
    DomainParams params;
    bool log_events = false;

    /// Throws Error on invalid ports or thresholds. Port 0 means "any free port".
    void validate() const;
};

/// The signer daemon. Loads (or on first launch generates and persists) the MOVA and DH key
/// pairs and the device registry, then serves each device connection on its own thread.
class Server {
public:
    explicit Server(ServerConfig config);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds the device and admin ports and starts serving in the background.
    void start();
    /// Blocks until stop() is called from another thread or a signal handler path.
    void wait();
    void stop();

    std::uint16_t port() const;
    std::uint16_t admin_port() const;

    const PublicKey& public_key() const { return keys_.pub; }
    const DhStaticKeyPair& dh_key() const { return dh_; }
    Registry& registry() { return registry_; }
    EventLog& events() { return events_; }
    const ServerConfig& config() const { return config_; }

    /// Sessions handled so far (completed or failed).
    std::uint64_t sessions_finished() const { return sessions_finished_.load(); }

private:
    void accept_loop();
    void handle_connection(Socket& socket);
    void reap_finished();

    ServerConfig config_;
    KeyPair keys_;
    DhStaticKeyPair dh_;
    Registry registry_;
    EventLog events_;
    std::unique_ptr<Listener> listener_;
    std::unique_ptr<AdminApi> admin_;
    std::thread accept_thread_;

    struct Worker {
        Socket socket;
        std::thread thread;
        std::atomic<bool> done{false};
    };
    std::mutex workers_mutex_;
    std::list<Worker> workers_;

    std::atomic<bool> stopping_{false};
    std::atomic<std::uint64_t> sessions_finished_{0};
    std::mutex stop_mutex_;
    std::condition_variable stop_cv_;
    bool stopped_ = false;
};

/// Loads keyPub.key/keyPriv.key from `dir`, or generates and persists a fresh pair when
/// neither exists. Throws FormatError when only one exists or the pair is inconsistent.
KeyPair load_or_create_keys(const std::filesystem::path& dir, const DomainParams& params, RandomSource& rng);

}  // namespace mova
