#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <mutex>
#include <string>
#include <thread>

#include "mova/net.hpp"

namespace mova::test {

/// Forwards every accepted connection to a target and records the bytes seen in each direction.
class TcpProxy {
public:
    TcpProxy(std::string target_host, std::uint16_t target_port);
    ~TcpProxy();

    std::uint16_t port() const { return listener_.port(); }
    /// Concatenated client-to-server and server-to-client traffic of all connections so far.
    Bytes upstream() const;
    Bytes downstream() const;
    void stop();

private:
    void accept_loop();
    void pump(Socket& from, Socket& to, Bytes& record);

    std::string host_;
    std::uint16_t target_port_;
    Listener listener_;
    std::thread accept_thread_;
    std::atomic<bool> stopping_{false};
    mutable std::mutex mutex_;
    Bytes up_;
    Bytes down_;
    struct Link {
        Socket client;
        Socket server;
        std::thread up;
        std::thread down;
    };
    std::list<Link> links_;
};

}  // namespace mova::test
