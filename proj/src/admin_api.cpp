#include "mova/admin_api.hpp"

#include <atomic>
#include <charconv>
#include <optional>
#include <thread>

#include "httplib.h"
#include "mova/net.hpp"

namespace mova {

namespace {

std::optional<std::int64_t> parse_id(const std::string& text)
{
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::uint64_t> parse_seq(const std::string& text)
{
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

void send_json(httplib::Response& res, int status, const nlohmann::json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message)
{
    send_json(res, status, {{"error", message}});
}

}  // namespace

struct AdminApi::Impl {
    httplib::Server http;
    std::thread thread;
    std::atomic<bool> stopping{false};
};

AdminApi::AdminApi(Registry& registry, EventLog& events)
    : impl_(std::make_unique<Impl>()), registry_(registry), events_(events)
{
    auto& http = impl_->http;
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type, Last-Event-ID");
        res.status = 204;
    });

    http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"status", "ok"}});
    });

    http.Get("/devices", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, nlohmann::json(registry_.snapshot()));
    });

    http.Get(R"(/devices/(-?\d+))", [this](const httplib::Request& req, httplib::Response& res) {
        auto id = parse_id(req.matches[1]);
        auto record = id ? registry_.get(*id) : std::nullopt;
        if (!record) {
            send_error(res, 404, "unknown device");
            return;
        }
        send_json(res, 200, nlohmann::json(*record));
    });

    http.Post(R"(/devices/(-?\d+)/(approve|ban|rehabilitate))",
              [this](const httplib::Request& req, httplib::Response& res) {
                  auto id = parse_id(req.matches[1]);
                  const std::string action = req.matches[2];
                  if (!id) {
                      send_error(res, 404, "unknown device");
                      return;
                  }
                  Transition result = Transition::not_found;
                  if (action == "approve") {
                      result = registry_.approve(*id);
                  } else if (action == "ban") {
                      result = registry_.ban(*id);
                  } else {
                      result = registry_.rehabilitate(*id);
                  }
                  if (result == Transition::not_found) {
                      send_error(res, 404, "unknown device");
                      return;
                  }
                  if (result == Transition::illegal) {
                      auto record = registry_.get(*id);
                      send_error(res, 409,
                                 "cannot " + action + " a device that is " +
                                     std::string(record ? status_name(record->status) : "gone"));
                      return;
                  }
                  events_.append(*id, action, "administrator");
                  send_json(res, 200, nlohmann::json(*registry_.get(*id)));
              });

    http.Get("/events", [this](const httplib::Request& req, httplib::Response& res) {
        std::uint64_t after = 0;
        std::string from = req.get_header_value("Last-Event-ID");
        if (from.empty() && req.has_param("since")) {
            from = req.get_param_value("since");
        }
        if (!from.empty()) {
            auto seq = parse_seq(from);
            if (!seq) {
                send_error(res, 400, "malformed event id");
                return;
            }
            after = *seq;
        }
        if (req.get_param_value("follow") == "0") {
            std::string body;
            for (const auto& event : events_.since(after)) {
                body += format_sse(event);
            }
            res.set_content(body, "text/event-stream");
            return;
        }
        res.set_header("Cache-Control", "no-cache");
        auto cursor = std::make_shared<std::uint64_t>(after);
        res.set_chunked_content_provider(
            "text/event-stream", [this, cursor](std::size_t, httplib::DataSink& sink) {
                if (impl_->stopping.load() || events_.closed()) {
                    sink.done();
                    return true;
                }
                auto batch = events_.wait_since(*cursor, keepalive_);
                if (batch.empty()) {
                    if (impl_->stopping.load() || events_.closed()) {
                        sink.done();
                        return true;
                    }
                    const std::string comment = ": keepalive\n\n";
                    return sink.write(comment.data(), comment.size());
                }
                std::string chunk;
                for (const auto& event : batch) {
                    chunk += format_sse(event);
                    *cursor = event.seq;
                }
                return sink.write(chunk.data(), chunk.size());
            });
    });
}

AdminApi::~AdminApi()
{
    stop();
}

void AdminApi::start(const std::string& bind_address, std::uint16_t port)
{
    auto& http = impl_->http;
    int bound = port == 0 ? http.bind_to_any_port(bind_address) : (http.bind_to_port(bind_address, port) ? port : -1);
    if (bound <= 0) {
        throw NetError("admin api: cannot bind " + bind_address + ":" + std::to_string(port));
    }
    port_ = static_cast<std::uint16_t>(bound);
    impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
    http.wait_until_ready();
}

void AdminApi::stop()
{
    if (!impl_ || impl_->stopping.exchange(true)) {
        return;
    }
    impl_->http.stop();
    if (impl_->thread.joinable()) {
        impl_->thread.join();
    }
}

}  // namespace mova
