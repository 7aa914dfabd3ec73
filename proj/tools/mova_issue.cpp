#include <algorithm>
#include <filesystem>
#include <iostream>

#include "common.hpp"
#include "mova/encoding.hpp"
#include "mova/ticket_request.hpp"

using namespace mova;

int main(int argc, char** argv)
{
    tools::ConnectionFlags conn;
    TicketRequest request;
    std::string stations_file = MOVA_STATIONS_FILE;

    CLI::App app{"Request a signed train ticket"};
    conn.add_to(app);
    app.add_option("--from", request.from, "Departure station")->required();
    app.add_option("--to", request.to, "Arrival station")->required();
    app.add_option("--date", request.date, "Travel date YYYY-MM-DD")->required();
    app.add_option("--class", request.travel_class, "Travel class 1 or 2")->required();
    app.add_option("--name", request.passenger, "Passenger name")->required();
    app.add_option("--stations", stations_file, "Station list")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? tools::kExitOk : tools::kExitError;
    }

    std::string message;
    try {
        message = request.render();
        if (std::filesystem::exists(stations_file)) {
            auto stations = parse_station_list(read_text_file(stations_file));
            for (const auto& name : {request.from, request.to}) {
                if (std::find(stations.begin(), stations.end(), name) == stations.end()) {
                    std::cerr << "mova-issue: unknown station '" << name << "'\n";
                    return tools::kExitError;
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "mova-issue: " << e.what() << '\n';
        return tools::kExitError;
    }

    try {
        DeviceState state = tools::load_state(conn);
        DeviceSession session(state, tools::session_options(conn));
        state.save(conn.state);
        PublicKey pk = session.get_key();
        Signature sig = session.sign(message);
        Ticket ticket{message, encode_signature(sig, pk.params.alphabet)};
        std::cout << ticket.render() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "mova-issue: " << e.what() << '\n';
        return tools::kExitError;
    }
    return tools::kExitOk;
}
