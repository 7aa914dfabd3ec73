#include <iostream>

#include "common.hpp"
#include "mova/encoding.hpp"

using namespace mova;

int main(int argc, char** argv)
{
    tools::ConnectionFlags conn;
    std::string message;
    std::string sig_text;
    std::string ticket_text;

    CLI::App app{"Verify a ticket with the signer"};
    conn.add_to(app);
    auto* message_opt = app.add_option("--message", message, "Ticket message");
    auto* sig_opt = app.add_option("--sig", sig_text, "Signature characters");
    auto* ticket_opt = app.add_option("--ticket", ticket_text, "Whole ticket text '<message> <sig>'");
    message_opt->needs(sig_opt);
    sig_opt->needs(message_opt);
    ticket_opt->excludes(message_opt)->excludes(sig_opt);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? tools::kExitOk : tools::kExitError;
    }
    if (!ticket_text.empty()) {
        auto ticket = Ticket::parse(ticket_text);
        if (!ticket) {
            std::cerr << "mova-verify: ticket text has no signature part\n";
            return tools::kExitError;
        }
        message = ticket->message;
        sig_text = ticket->signature_text;
    } else if (message.empty()) {
        std::cerr << "mova-verify: give --message and --sig, or --ticket\n";
        return tools::kExitError;
    }

    // Reject undecodable signatures before any network traffic.
    Signature claimed;
    try {
        claimed = decode_signature(sig_text);
    } catch (const std::exception& e) {
        std::cerr << "mova-verify: " << e.what() << '\n';
        return tools::kExitError;
    }

    try {
        DeviceState state = tools::load_state(conn);
        DeviceSession session(state, tools::session_options(conn));
        state.save(conn.state);
        PublicKey pk = session.get_key();
        if (pk.params.alphabet != kDefaultAlphabet) {
            claimed = decode_signature(sig_text, pk.params.alphabet);
        }
        OsRandom rng;
        protocol::Verdict verdict = session.verify(pk, message, claimed, rng);
        switch (verdict) {
        case protocol::Verdict::valid:
            std::cout << "Valid\n";
            return tools::kExitOk;
        case protocol::Verdict::invalid:
            std::cout << "Invalid\n";
            return tools::kExitInvalid;
        case protocol::Verdict::failed:
            std::cerr << "mova-verify: the signer neither confirmed nor denied the signature\n";
            return tools::kExitError;
        }
    } catch (const std::exception& e) {
        std::cerr << "mova-verify: " << e.what() << '\n';
    }
    return tools::kExitError;
}
