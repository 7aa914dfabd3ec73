#include "mova/registry.hpp"

#include <fstream>
#include <sstream>

#include "mova/error.hpp"
#include "mova/keys.hpp"

namespace mova {

namespace {

constexpr std::string_view kIndexFile = "deviceList.list";
constexpr std::string_view kDeviceDir = "devices";

std::filesystem::path record_path(const std::filesystem::path& dir, std::int64_t id)
{
    return dir / kDeviceDir / (std::to_string(id) + ".dl.json");
}

}  // namespace

std::string_view status_name(DeviceStatus status)
{
    switch (status) {
    case DeviceStatus::pending:
        return "pending";
    case DeviceStatus::active:
        return "active";
    case DeviceStatus::banned:
        return "banned";
    }
    return "unknown";
}

std::optional<DeviceStatus> parse_status(std::string_view name)
{
    if (name == "pending") return DeviceStatus::pending;
    if (name == "active") return DeviceStatus::active;
    if (name == "banned") return DeviceStatus::banned;
    return std::nullopt;
}

std::int64_t now_ms()
{
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void to_json(nlohmann::json& j, const DeviceRecord& record)
{
    auto history = nlohmann::json::array();
    for (const auto& e : record.history) {
        history.push_back({{"timestamp_ms", e.timestamp_ms}, {"kind", e.kind}, {"detail", e.detail}});
    }
    j = nlohmann::json{{"id", record.id},
                       {"status", status_name(record.status)},
                       {"sign_count", record.sign_count},
                       {"verify_count", record.verify_count},
                       {"fail_count", record.fail_count},
                       {"last_seen_ms", record.last_seen_ms},
                       {"history", std::move(history)}};
}

void from_json(const nlohmann::json& j, DeviceRecord& record)
{
    record.id = j.at("id").get<std::int64_t>();
    auto status = parse_status(j.at("status").get<std::string>());
    if (!status) {
        throw FormatError("device record: unknown status");
    }
    record.status = *status;
    record.sign_count = j.at("sign_count").get<std::uint64_t>();
    record.verify_count = j.at("verify_count").get<std::uint64_t>();
    record.fail_count = j.at("fail_count").get<std::uint64_t>();
    record.last_seen_ms = j.value("last_seen_ms", std::int64_t{0});
    record.history.clear();
    for (const auto& e : j.value("history", nlohmann::json::array())) {
        record.history.push_back(DeviceEvent{e.at("timestamp_ms").get<std::int64_t>(),
                                             e.at("kind").get<std::string>(),
                                             e.value("detail", std::string{})});
    }
}

Registry::Registry(std::filesystem::path dir, std::uint64_t ban_threshold)
    : dir_(std::move(dir)), ban_threshold_(ban_threshold)
{
    if (ban_threshold_ == 0) {
        throw Error("registry: ban threshold must be positive");
    }
    if (!dir_.empty()) {
        std::filesystem::create_directories(dir_ / kDeviceDir);
        load();
    }
}

void Registry::load()
{
    const auto index = dir_ / kIndexFile;
    if (!std::filesystem::exists(index)) {
        return;
    }
    std::istringstream in(read_text_file(index));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::int64_t id = 0;
        try {
            id = std::stoll(line);
        } catch (const std::exception&) {
            throw FormatError("registry index: malformed id '" + line + "'");
        }
        DeviceRecord record;
        try {
            from_json(nlohmann::json::parse(read_text_file(record_path(dir_, id))), record);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("registry record " + std::to_string(id) + ": " + e.what());
        }
        if (record.id != id) {
            throw FormatError("registry record " + std::to_string(id) + ": id mismatch");
        }
        records_[id] = std::move(record);
        next_id_ = std::max(next_id_, id + 1);
    }
}

void Registry::persist(const DeviceRecord& record)
{
    if (dir_.empty()) {
        return;
    }
    nlohmann::json j = record;
    write_text_file_atomic(record_path(dir_, record.id), j.dump(2) + "\n");
}

void Registry::persist_index()
{
    if (dir_.empty()) {
        return;
    }
    std::string text;
    for (const auto& [id, record] : records_) {
        text += std::to_string(id) + "\n";
    }
    write_text_file_atomic(dir_ / kIndexFile, text);
}

void Registry::note(DeviceRecord& record, std::string_view kind, std::string_view detail)
{
    record.history.push_back(DeviceEvent{now_ms(), std::string(kind), std::string(detail)});
    if (record.history.size() > kHistoryLimit) {
        record.history.erase(record.history.begin(),
                             record.history.begin() + static_cast<long>(record.history.size() - kHistoryLimit));
    }
}

DeviceRecord& Registry::require(std::int64_t id)
{
    auto it = records_.find(id);
    if (it == records_.end()) {
        throw Error("registry: unknown device " + std::to_string(id));
    }
    return it->second;
}

DeviceRecord Registry::register_pending()
{
    std::lock_guard lock(mutex_);
    DeviceRecord record;
    record.id = next_id_++;
    record.status = DeviceStatus::pending;
    record.last_seen_ms = now_ms();
    note(record, "register", "registration requested");
    persist(record);
    records_[record.id] = record;
    persist_index();
    changed_.notify_all();
    return record;
}

std::optional<DeviceRecord> Registry::get(std::int64_t id) const
{
    std::lock_guard lock(mutex_);
    auto it = records_.find(id);
    if (it == records_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<DeviceRecord> Registry::snapshot() const
{
    std::lock_guard lock(mutex_);
    std::vector<DeviceRecord> out;
    out.reserve(records_.size());
    for (const auto& [id, record] : records_) {
        out.push_back(record);
    }
    return out;
}

Transition Registry::approve(std::int64_t id)
{
    std::lock_guard lock(mutex_);
    auto it = records_.find(id);
    if (it == records_.end()) {
        return Transition::not_found;
    }
    if (it->second.status != DeviceStatus::pending) {
        return Transition::illegal;
    }
    it->second.status = DeviceStatus::active;
    note(it->second, "approve", "");
    persist(it->second);
    changed_.notify_all();
    return Transition::ok;
}

Transition Registry::ban(std::int64_t id)
{
    std::lock_guard lock(mutex_);
    auto it = records_.find(id);
    if (it == records_.end()) {
        return Transition::not_found;
    }
    if (it->second.status == DeviceStatus::banned) {
        return Transition::illegal;
    }
    it->second.status = DeviceStatus::banned;
    note(it->second, "ban", "administrator");
    persist(it->second);
    changed_.notify_all();
    return Transition::ok;
}

Transition Registry::rehabilitate(std::int64_t id)
{
    std::lock_guard lock(mutex_);
    auto it = records_.find(id);
    if (it == records_.end()) {
        return Transition::not_found;
    }
    if (it->second.status != DeviceStatus::banned) {
        return Transition::illegal;
    }
    it->second.status = DeviceStatus::active;
    it->second.fail_count = 0;
    note(it->second, "rehabilitate", "");
    persist(it->second);
    changed_.notify_all();
    return Transition::ok;
}

void Registry::remove(std::int64_t id)
{
    std::lock_guard lock(mutex_);
    if (records_.erase(id) == 0) {
        return;
    }
    persist_index();
    if (!dir_.empty()) {
        std::error_code ec;
        std::filesystem::remove(record_path(dir_, id), ec);
    }
    changed_.notify_all();
}

std::optional<DeviceStatus> Registry::await_decision(std::int64_t id, std::chrono::milliseconds timeout) const
{
    std::unique_lock lock(mutex_);
    std::optional<DeviceStatus> status;
    changed_.wait_for(lock, timeout, [&] {
        auto it = records_.find(id);
        if (it == records_.end()) {
            status.reset();
            return true;
        }
        status = it->second.status;
        return *status != DeviceStatus::pending;
    });
    return status;
}

DeviceRecord Registry::record_sign(std::int64_t id)
{
    std::lock_guard lock(mutex_);
    DeviceRecord& record = require(id);
    ++record.sign_count;
    record.last_seen_ms = now_ms();
    note(record, "sign", "");
    persist(record);
    return record;
}

void Registry::apply_failure(DeviceRecord& record, std::string_view detail)
{
    ++record.fail_count;
    if (record.status == DeviceStatus::active && record.fail_count >= ban_threshold_) {
        record.status = DeviceStatus::banned;
        note(record, "ban", "failure threshold reached: " + std::string(detail));
        changed_.notify_all();
    }
}

DeviceRecord Registry::record_verify(std::int64_t id, bool failed, std::string_view detail)
{
    std::lock_guard lock(mutex_);
    DeviceRecord& record = require(id);
    ++record.verify_count;
    record.last_seen_ms = now_ms();
    note(record, failed ? "verify-invalid" : "verify-valid", detail);
    if (failed) {
        apply_failure(record, detail);
    }
    persist(record);
    return record;
}

DeviceRecord Registry::record_failure(std::int64_t id, std::string_view detail)
{
    std::lock_guard lock(mutex_);
    DeviceRecord& record = require(id);
    record.last_seen_ms = now_ms();
    note(record, "abort", detail);
    apply_failure(record, detail);
    persist(record);
    return record;
}

void Registry::touch(std::int64_t id)
{
    std::lock_guard lock(mutex_);
    auto it = records_.find(id);
    if (it != records_.end()) {
        it->second.last_seen_ms = now_ms();
    }
}

}  // namespace mova
