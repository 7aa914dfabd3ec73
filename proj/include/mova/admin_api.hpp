#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "mova/events.hpp"
#include "mova/registry.hpp"

namespace mova {

/// HTTP API consumed by the operator dashboard.
///
///   GET  /health                       {"status":"ok"}
///   GET  /devices                      array of device records
///   GET  /devices/{id}                 one record, 404 when unknown
///   POST /devices/{id}/approve         pending -> active
///   POST /devices/{id}/ban             pending|active -> banned
///   POST /devices/{id}/rehabilitate    banned -> active, fail count cleared
///   GET  /events                       text/event-stream; resumes after Last-Event-ID or ?since=N;
///                                      ?follow=0 returns the buffered events and ends the response
///
/// Illegal transitions answer 409 with {"error": ...}. Every response allows any origin.
class AdminApi {
public:
    AdminApi(Registry& registry, EventLog& events);
    ~AdminApi();
    AdminApi(const AdminApi&) = delete;
    AdminApi& operator=(const AdminApi&) = delete;

    /// Binds (port 0 = ephemeral) and serves on a background thread. Throws NetError if binding fails.
    void start(const std::string& bind_address, std::uint16_t port);
    void stop();
    std::uint16_t port() const { return port_; }

    /// Interval between SSE keepalive comments while no events arrive.
    void set_keepalive(std::chrono::milliseconds interval) { keepalive_ = interval; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Registry& registry_;
    EventLog& events_;
    std::uint16_t port_ = 0;
    std::chrono::milliseconds keepalive_ = std::chrono::seconds(15);
};

}  // namespace mova
