#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "mova/bigint.hpp"
#include "mova/error.hpp"

namespace mova {

class NetError : public Error {
public:
    using Error::Error;
};

/// Owning TCP socket. Move-only.
class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket();
    Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }

    void write_all(ByteView data);
    /// Throws NetError on EOF, timeout or socket error.
    void read_exact(std::span<std::uint8_t> out);
    Bytes read_exact(std::size_t n);
    /// Reads whatever is available (blocking until at least one byte or EOF). Empty on EOF.
    Bytes read_some(std::size_t max);

    /// Receive/send timeout; zero disables.
    void set_timeout(std::chrono::milliseconds timeout);
    void shutdown();
    void close();

private:
    int fd_ = -1;
};

Socket connect_tcp(const std::string& host, std::uint16_t port,
                   std::chrono::milliseconds timeout = std::chrono::seconds(10));

class Listener {
public:
    /// Binds and listens. Port 0 picks an ephemeral port.
    Listener(const std::string& bind_address, std::uint16_t port);

    /// Blocks for the next connection. Throws NetError once the listener is closed.
    Socket accept();
    std::uint16_t port() const { return port_; }
    /// Wakes any thread blocked in accept().
    void close();

private:
    Socket socket_;
    std::uint16_t port_ = 0;
};

/// Splits "host:port". Throws std::invalid_argument when malformed.
std::pair<std::string, std::uint16_t> parse_endpoint(std::string_view endpoint);

}  // namespace mova
