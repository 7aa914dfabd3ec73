#include <iostream>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "mova/net.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitError = 2;

void print_devices(const nlohmann::json& devices)
{
    std::cout << "id\tstatus\tsigns\tverifies\tfailures\n";
    for (const auto& d : devices) {
        std::cout << d.at("id") << '\t' << d.at("status").get<std::string>() << '\t' << d.at("sign_count") << '\t'
                  << d.at("verify_count") << '\t' << d.at("fail_count") << '\n';
    }
}

}  // namespace

int main(int argc, char** argv)
{
    std::string admin = "127.0.0.1:5001";
    std::int64_t id = 0;
    std::uint64_t since = 0;
    bool json_output = false;

    CLI::App app{"Headless administration of a MOVA signer"};
    app.add_option("--admin", admin, "Admin API address host:port")->capture_default_str();
    app.add_flag("--json", json_output, "Print raw JSON");
    app.require_subcommand(1);
    auto* list = app.add_subcommand("list", "List registered devices");
    auto* show = app.add_subcommand("show", "Show one device with its history");
    show->add_option("id", id)->required();
    std::string action;
    for (const char* name : {"approve", "ban", "rehabilitate"}) {
        auto* sub = app.add_subcommand(name, std::string("Device transition: ") + name);
        sub->add_option("id", id)->required();
        sub->callback([&action, name] { action = name; });
    }
    auto* events = app.add_subcommand("events", "Print buffered session events");
    events->add_option("--since", since, "Only events after this sequence number");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    std::string host;
    std::uint16_t port = 0;
    try {
        std::tie(host, port) = mova::parse_endpoint(admin);
    } catch (const std::exception& e) {
        std::cerr << "mova-admin: bad --admin address: " << e.what() << '\n';
        return kExitError;
    }
    httplib::Client client(host, port);
    client.set_connection_timeout(std::chrono::seconds(5));
    client.set_read_timeout(std::chrono::seconds(10));

    httplib::Result res;
    if (*list) {
        res = client.Get("/devices");
    } else if (*show) {
        res = client.Get("/devices/" + std::to_string(id));
    } else if (*events) {
        auto result = client.Get("/events?follow=0&since=" + std::to_string(since));
        if (!result) {
            std::cerr << "mova-admin: " << httplib::to_string(result.error()) << '\n';
            return kExitError;
        }
        if (result->status != 200) {
            std::cerr << "mova-admin: " << result->status << '\n';
            return kExitRejected;
        }
        const std::string& body = result->body;
        std::size_t pos = 0;
        while ((pos = body.find("data: ", pos)) != std::string::npos) {
            std::size_t end = body.find('\n', pos);
            auto e = nlohmann::json::parse(body.substr(pos + 6, end - pos - 6));
            std::cout << e.at("seq") << '\t' << e.at("device_id") << '\t' << e.at("kind").get<std::string>() << '\t'
                      << e.at("detail").get<std::string>() << '\n';
            pos = end;
        }
        return kExitOk;
    } else {
        res = client.Post("/devices/" + std::to_string(id) + "/" + action);
    }

    if (!res) {
        std::cerr << "mova-admin: " << httplib::to_string(res.error()) << '\n';
        return kExitError;
    }
    nlohmann::json body;
    try {
        body = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
        std::cerr << "mova-admin: malformed response\n";
        return kExitError;
    }
    if (res->status != 200) {
        std::cerr << "mova-admin: " << res->status << ' ' << body.value("error", std::string{}) << '\n';
        return kExitRejected;
    }
    if (json_output) {
        std::cout << body.dump(2) << '\n';
    } else if (*list) {
        print_devices(body);
    } else {
        std::cout << body.at("id") << ' ' << body.at("status").get<std::string>() << " fail_count="
                  << body.at("fail_count") << '\n';
        if (*show) {
            for (const auto& h : body.at("history")) {
                std::cout << "  " << h.at("timestamp_ms") << ' ' << h.at("kind").get<std::string>() << ' '
                          << h.value("detail", std::string{}) << '\n';
            }
        }
    }
    return kExitOk;
}
