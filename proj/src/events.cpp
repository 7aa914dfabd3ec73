#include "mova/events.hpp"

#include <iostream>

#include "mova/registry.hpp"

namespace mova {

void to_json(nlohmann::json& j, const ServerEvent& event)
{
    j = nlohmann::json{{"seq", event.seq},
                       {"timestamp_ms", event.timestamp_ms},
                       {"device_id", event.device_id},
                       {"kind", event.kind},
                       {"detail", event.detail}};
}

EventLog::EventLog(std::size_t capacity, bool echo_to_stderr) : capacity_(capacity), echo_(echo_to_stderr) {}

std::uint64_t EventLog::append(std::int64_t device_id, std::string_view kind, std::string_view detail)
{
    ServerEvent event{0, now_ms(), device_id, std::string(kind), std::string(detail)};
    {
        std::lock_guard lock(mutex_);
        event.seq = next_seq_++;
        events_.push_back(event);
        while (events_.size() > capacity_) {
            events_.pop_front();
        }
    }
    cv_.notify_all();
    if (echo_) {
        std::cerr << "[event " << event.seq << "] device=" << device_id << " " << kind;
        if (!detail.empty()) {
            std::cerr << ": " << detail;
        }
        std::cerr << '\n';
    }
    return event.seq;
}

std::vector<ServerEvent> EventLog::since(std::uint64_t after) const
{
    std::lock_guard lock(mutex_);
    std::vector<ServerEvent> out;
    for (const auto& e : events_) {
        if (e.seq > after) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<ServerEvent> EventLog::wait_since(std::uint64_t after, std::chrono::milliseconds timeout) const
{
    std::unique_lock lock(mutex_);
    cv_.wait_for(lock, timeout, [&] { return closed_ || next_seq_ - 1 > after; });
    std::vector<ServerEvent> out;
    if (closed_) {
        return out;
    }
    for (const auto& e : events_) {
        if (e.seq > after) {
            out.push_back(e);
        }
    }
    return out;
}

std::uint64_t EventLog::last_seq() const
{
    std::lock_guard lock(mutex_);
    return next_seq_ - 1;
}

void EventLog::close()
{
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    cv_.notify_all();
}

bool EventLog::closed() const
{
    std::lock_guard lock(mutex_);
    return closed_;
}

std::string format_sse(const ServerEvent& event)
{
    nlohmann::json j = event;
    return "id: " + std::to_string(event.seq) + "\nevent: " + event.kind + "\ndata: " + j.dump() + "\n\n";
}

}  // namespace mova
