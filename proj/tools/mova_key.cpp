#include <iostream>

#include "common.hpp"
#include "mova/bits.hpp"
#include "mova/hash.hpp"

using namespace mova;

int main(int argc, char** argv)
{
    tools::ConnectionFlags conn;
    CLI::App app{"Fetch and summarize the signer's public key"};
    conn.add_to(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? tools::kExitOk : tools::kExitError;
    }

    try {
        DeviceState state = tools::load_state(conn);
        DeviceSession session(state, tools::session_options(conn));
        state.save(conn.state);
        PublicKey pk = session.get_key();
        Digest ygen = sha256(pack_bits(pk.y_gen));
        std::cout << "modulus_bits " << bit_length(pk.n) << '\n'
                  << "seed " << bytes_to_hex(pk.k) << '\n'
                  << "ygen_sha256 " << bytes_to_hex(ygen) << '\n'
                  << "key_sha256 " << public_key_fingerprint(pk) << '\n';
    } catch (const std::exception& e) {
        std::cerr << "mova-key: " << e.what() << '\n';
        return tools::kExitError;
    }
    return tools::kExitOk;
}
