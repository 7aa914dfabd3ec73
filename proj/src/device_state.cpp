#include "mova/device_state.hpp"

#include "json.hpp"
#include "mova/error.hpp"
#include "mova/keys.hpp"

namespace mova {

DeviceState DeviceState::load(const std::filesystem::path& path)
{
    DeviceState state;
    if (!std::filesystem::exists(path)) {
        return state;
    }
    try {
        auto j = nlohmann::json::parse(read_text_file(path));
        state.id = j.value("id", std::int64_t{-1});
        state.server = j.value("server", std::string{});
        auto dh = j.value("dh_server_public", std::string{});
        if (!dh.empty()) {
            state.dh_server_public = from_hex(dh);
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("device state " + path.string() + ": " + e.what());
    }
    if (state.id < -1) {
        throw FormatError("device state " + path.string() + ": invalid id");
    }
    return state;
}

void DeviceState::save(const std::filesystem::path& path) const
{
    nlohmann::json j{{"id", id},
                     {"server", server},
                     {"dh_server_public", dh_server_public ? to_hex(*dh_server_public) : std::string{}}};
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    write_text_file_atomic(path, j.dump(2) + "\n");
}

void DeviceState::reset_for(const std::string& endpoint)
{
    id = -1;
    server = endpoint;
    dh_server_public.reset();
}

}  // namespace mova
