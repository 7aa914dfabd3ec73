#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mova {

enum class DeviceStatus { pending, active, banned };

std::string_view status_name(DeviceStatus status);
std::optional<DeviceStatus> parse_status(std::string_view name);

struct DeviceEvent {
    std::int64_t timestamp_ms = 0;
    std::string kind;
    std::string detail;
};

struct DeviceRecord {
    std::int64_t id = 0;
    DeviceStatus status = DeviceStatus::pending;
    std::uint64_t sign_count = 0;
    std::uint64_t verify_count = 0;
    std::uint64_t fail_count = 0;
    std::int64_t last_seen_ms = 0;
    std::vector<DeviceEvent> history;
};

void to_json(nlohmann::json& j, const DeviceRecord& record);
void from_json(const nlohmann::json& j, DeviceRecord& record);

enum class Transition { ok, not_found, illegal };

std::int64_t now_ms();

/// Device list shared by all sessions. Every mutation is persisted before the lock is released:
/// `<dir>/deviceList.list` holds one id per line and `<dir>/devices/<id>.dl.json` each record.
/// An empty directory path keeps the registry in memory only.
class Registry {
public:
    static constexpr std::size_t kHistoryLimit = 32;

    Registry(std::filesystem::path dir, std::uint64_t ban_threshold);

    DeviceRecord register_pending();
    std::optional<DeviceRecord> get(std::int64_t id) const;
    std::vector<DeviceRecord> snapshot() const;

    /// pending -> active.
    Transition approve(std::int64_t id);
    /// pending|active -> banned.
    Transition ban(std::int64_t id);
    /// banned -> active with fail_count reset.
    Transition rehabilitate(std::int64_t id);
    void remove(std::int64_t id);

    /// Blocks while the device is pending, up to `timeout`. Returns the last observed status,
    /// or nullopt if the record disappeared.
    std::optional<DeviceStatus> await_decision(std::int64_t id, std::chrono::milliseconds timeout) const;

    DeviceRecord record_sign(std::int64_t id);
    /// Counts one verify request; `failed` adds a failure and may ban the device.
    DeviceRecord record_verify(std::int64_t id, bool failed, std::string_view detail);
    /// Counts a protocol failure outside a verify request (e.g. a corrupted frame).
    DeviceRecord record_failure(std::int64_t id, std::string_view detail);
    void touch(std::int64_t id);

    std::uint64_t ban_threshold() const { return ban_threshold_; }

private:
    void load();
    void persist(const DeviceRecord& record);
    void persist_index();
    void note(DeviceRecord& record, std::string_view kind, std::string_view detail);
    DeviceRecord& require(std::int64_t id);
    void apply_failure(DeviceRecord& record, std::string_view detail);

    std::filesystem::path dir_;
    std::uint64_t ban_threshold_;
    mutable std::mutex mutex_;
    mutable std::condition_variable changed_;
    std::map<std::int64_t, DeviceRecord> records_;
    std::int64_t next_id_ = 1;
};

}  // namespace mova
