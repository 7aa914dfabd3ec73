#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mova {

/// Kinds: register, approve, refuse, sign, verify-valid, verify-invalid, ban, rehabilitate, abort.
struct ServerEvent {
    std::uint64_t seq = 0;
    std::int64_t timestamp_ms = 0;
    std::int64_t device_id = 0;
    std::string kind;
    std::string detail;
};

void to_json(nlohmann::json& j, const ServerEvent& event);

/// Append-only session log with a bounded replay window. Sequence numbers start at 1 and
/// never repeat, so a reader can detect a gap after falling behind the window.
class EventLog {
public:
    explicit EventLog(std::size_t capacity = 1000, bool echo_to_stderr = false);

    std::uint64_t append(std::int64_t device_id, std::string_view kind, std::string_view detail = {});

    /// Events with seq > after still in the window.
    std::vector<ServerEvent> since(std::uint64_t after) const;

    /// Like since(), but blocks up to `timeout` for at least one event. Empty on timeout or close.
    std::vector<ServerEvent> wait_since(std::uint64_t after, std::chrono::milliseconds timeout) const;

    std::uint64_t last_seq() const;
    void close();
    bool closed() const;

private:
    std::size_t capacity_;
    bool echo_;
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    std::deque<ServerEvent> events_;
    std::uint64_t next_seq_ = 1;
    bool closed_ = false;
};

/// `id: <seq>\nevent: <kind>\ndata: <json>\n\n`
std::string format_sse(const ServerEvent& event);

}  // namespace mova
