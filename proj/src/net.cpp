#include "mova/net.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <stdexcept>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

namespace mova {

namespace {

std::string errno_text(const char* what)
{
    return std::string(what) + ": " + std::strerror(errno);
}

}  // namespace

Socket::~Socket()
{
    close();
}

Socket& Socket::operator=(Socket&& other) noexcept
{
    if (this != &other) {
        close();
        fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
}

void Socket::write_all(ByteView data)
{
    std::size_t sent = 0;
    while (sent < data.size()) {
        ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw NetError(errno_text("send"));
        }
        sent += static_cast<std::size_t>(n);
    }
}

void Socket::read_exact(std::span<std::uint8_t> out)
{
    std::size_t got = 0;
    while (got < out.size()) {
        ssize_t n = ::recv(fd_, out.data() + got, out.size() - got, 0);
        if (n == 0) {
            throw NetError("connection closed by peer");
        }
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            if (errno == EAGAIN || errno == EWOULDBLOCK) {
                throw NetError("read timed out");
            }
            throw NetError(errno_text("recv"));
        }
        got += static_cast<std::size_t>(n);
    }
}

Bytes Socket::read_exact(std::size_t n)
{
    Bytes out(n);
    read_exact(std::span<std::uint8_t>(out));
    return out;
}

Bytes Socket::read_some(std::size_t max)
{
    Bytes out(max);
    while (true) {
        ssize_t n = ::recv(fd_, out.data(), out.size(), 0);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            if (errno == EAGAIN || errno == EWOULDBLOCK) {
                throw NetError("read timed out");
            }
            throw NetError(errno_text("recv"));
        }
        out.resize(static_cast<std::size_t>(n));
        return out;
    }
}

void Socket::set_timeout(std::chrono::milliseconds timeout)
{
    timeval tv{};
    tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
    tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
    ::setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
}

void Socket::shutdown()
{
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
    }
}

void Socket::close()
{
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

Socket connect_tcp(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout)
{
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const std::string service = std::to_string(port);
    int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &result);
    if (rc != 0) {
        throw NetError("resolve " + host + ": " + ::gai_strerror(rc));
    }
    std::string last_error = "no addresses";
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        Socket sock(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
        if (!sock.valid()) {
            last_error = errno_text("socket");
            continue;
        }
        sock.set_timeout(timeout);
        if (::connect(sock.fd(), ai->ai_addr, ai->ai_addrlen) == 0) {
            int one = 1;
            ::setsockopt(sock.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
            ::freeaddrinfo(result);
            return sock;
        }
        last_error = errno_text("connect");
    }
    ::freeaddrinfo(result);
    throw NetError("connect " + host + ":" + service + ": " + last_error);
}

Listener::Listener(const std::string& bind_address, std::uint16_t port)
{
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* result = nullptr;
    const std::string service = std::to_string(port);
    int rc = ::getaddrinfo(bind_address.empty() ? nullptr : bind_address.c_str(), service.c_str(), &hints,
                           &result);
    if (rc != 0) {
        throw NetError("resolve " + bind_address + ": " + ::gai_strerror(rc));
    }
    std::string last_error = "no addresses";
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        Socket sock(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
        if (!sock.valid()) {
            last_error = errno_text("socket");
            continue;
        }
        int one = 1;
        ::setsockopt(sock.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(sock.fd(), ai->ai_addr, ai->ai_addrlen) != 0) {
            last_error = errno_text("bind");
            continue;
        }
        if (::listen(sock.fd(), 64) != 0) {
            last_error = errno_text("listen");
            continue;
        }
        sockaddr_storage addr{};
        socklen_t len = sizeof addr;
        ::getsockname(sock.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
        if (addr.ss_family == AF_INET) {
            port_ = ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
        } else {
            port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
        }
        socket_ = std::move(sock);
        break;
    }
    ::freeaddrinfo(result);
    if (!socket_.valid()) {
        throw NetError("listen on " + bind_address + ":" + service + ": " + last_error);
    }
}

Socket Listener::accept()
{
    while (true) {
        int fd = ::accept(socket_.fd(), nullptr, nullptr);
        if (fd >= 0) {
            int one = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
            return Socket(fd);
        }
        if (errno == EINTR || errno == ECONNABORTED) {
            continue;
        }
        throw NetError(errno_text("accept"));
    }
}

void Listener::close()
{
    socket_.shutdown();
}

std::pair<std::string, std::uint16_t> parse_endpoint(std::string_view endpoint)
{
    auto colon = endpoint.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == endpoint.size()) {
        throw std::invalid_argument("expected host:port, got '" + std::string(endpoint) + "'");
    }
    std::string_view host = endpoint.substr(0, colon);
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
        host = host.substr(1, host.size() - 2);
    }
    std::string_view port_text = endpoint.substr(colon + 1);
    unsigned port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port == 0 || port > 65535) {
        throw std::invalid_argument("invalid port in '" + std::string(endpoint) + "'");
    }
    return {std::string(host), static_cast<std::uint16_t>(port)};
}

}  // namespace mova
