#include "tcp_proxy.hpp"

namespace mova::test {

TcpProxy::TcpProxy(std::string target_host, std::uint16_t target_port)
    : host_(std::move(target_host)), target_port_(target_port), listener_("127.0.0.1", 0)
{
    accept_thread_ = std::thread([this] { accept_loop(); });
}

TcpProxy::~TcpProxy()
{
    stop();
}

void TcpProxy::stop()
{
    if (stopping_.exchange(true)) {
        return;
    }
    listener_.close();
    accept_thread_.join();
    std::lock_guard lock(mutex_);
    for (auto& link : links_) {
        link.client.shutdown();
        link.server.shutdown();
    }
    for (auto& link : links_) {
        link.up.join();
        link.down.join();
    }
}

void TcpProxy::accept_loop()
{
    while (!stopping_.load()) {
        Socket client;
        try {
            client = listener_.accept();
        } catch (const NetError&) {
            if (stopping_.load()) {
                return;
            }
            continue;
        }
        Socket server;
        try {
            server = connect_tcp(host_, target_port_);
        } catch (const NetError&) {
            continue;
        }
        std::lock_guard lock(mutex_);
        Link& link = links_.emplace_back();
        link.client = std::move(client);
        link.server = std::move(server);
        link.up = std::thread([this, &link] { pump(link.client, link.server, up_); });
        link.down = std::thread([this, &link] { pump(link.server, link.client, down_); });
    }
}

void TcpProxy::pump(Socket& from, Socket& to, Bytes& record)
{
    try {
        while (true) {
            Bytes chunk = from.read_some(4096);
            if (chunk.empty()) {
                break;
            }
            {
                std::lock_guard lock(mutex_);
                record.insert(record.end(), chunk.begin(), chunk.end());
            }
            to.write_all(chunk);
        }
    } catch (const NetError&) {
    }
    to.shutdown();
}

Bytes TcpProxy::upstream() const
{
    std::lock_guard lock(mutex_);
    return up_;
}

Bytes TcpProxy::downstream() const
{
    std::lock_guard lock(mutex_);
    return down_;
}

}  // namespace mova::test
