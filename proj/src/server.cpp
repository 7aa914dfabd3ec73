#include "mova/server.hpp"

#include <optional>

#include "mova/admin_api.hpp"
#include "mova/encoding.hpp"
#include "mova/protocol.hpp"
#include "mova/signing.hpp"

namespace mova {

namespace {

constexpr std::string_view kPublicKeyFile = "keyPub.key";
constexpr std::string_view kPrivateKeyFile = "keyPriv.key";

// Upper bound on proof messages in one verify exchange (two protocols plus verdict).
constexpr int kMaxProofMessages = 12;

/// Prover side of one verify request.
class VerifyExchange {
public:
    VerifyExchange(SecureChannel& channel, const KeyPair& keys, std::string message, Signature claimed)
        : channel_(channel), keys_(keys), message_(std::move(message)), claimed_(std::move(claimed))
    {
    }

    struct Outcome {
        bool cheating = false;  // verifier sent randomness that does not match its challenge
        std::optional<protocol::Verdict> device_verdict;
        std::string note;
    };

    Outcome run()
    {
        using protocol::Step;
        Outcome out;
        std::optional<GhiProverState> ghi;
        std::optional<CoGhiProverState> coghi;
        bool ghi_done = false;
        bool coghi_done = false;

        for (int count = 0; count < kMaxProofMessages; ++count) {
            protocol::ProofMessage msg = protocol::decode_proof(channel_.receive());
            switch (msg.step) {
            case Step::ghi_challenge: {
                if (ghi || ghi_done || coghi || coghi_done) {
                    return desync(out, "unexpected confirmation challenge");
                }
                auto challenge = protocol::parse_ghi_challenge(msg.payload);
                auto step = ghi_prover_answer(keys_.priv, keys_.pub, confirmation_points(), challenge, rng_);
                if (auto* abort = std::get_if<ProofAbort>(&step)) {
                    ghi_done = true;
                    channel_.send(protocol::encode_abort(abort->reason));
                } else {
                    ghi.emplace(std::move(std::get<GhiProverState>(step)));
                    channel_.send(protocol::encode_commitment(Step::ghi_commit, ghi->commitment()));
                }
                break;
            }
            case Step::ghi_reveal: {
                if (!ghi) {
                    return desync(out, "reveal before commitment");
                }
                auto reveal = protocol::parse_ghi_reveal(msg.payload);
                auto step = ghi_prover_open(std::move(*ghi), reveal);
                ghi.reset();
                ghi_done = true;
                if (auto* abort = std::get_if<ProofAbort>(&step)) {
                    channel_.send(protocol::encode_abort(abort->reason));
                    out.cheating = true;
                    out.note = "confirmation: " + abort->reason;
                    return out;
                }
                channel_.send(protocol::encode_ghi_open(std::get<GhiOpening>(step)));
                break;
            }
            case Step::coghi_challenge: {
                if (ghi || coghi || coghi_done) {
                    return desync(out, "unexpected denial challenge");
                }
                auto challenge = protocol::parse_coghi_challenge(msg.payload);
                auto step = coghi_prover_answer(keys_.priv, keys_.pub, generator_points(keys_.pub),
                                                signature_points(keys_.pub, message_, claimed_), challenge,
                                                rng_);
                if (auto* abort = std::get_if<ProofAbort>(&step)) {
                    coghi_done = true;
                    channel_.send(protocol::encode_abort(abort->reason));
                } else {
                    coghi.emplace(std::move(std::get<CoGhiProverState>(step)));
                    channel_.send(protocol::encode_commitment(Step::coghi_commit, coghi->commitment()));
                }
                break;
            }
            case Step::coghi_reveal: {
                if (!coghi) {
                    return desync(out, "reveal before commitment");
                }
                auto reveal = protocol::parse_coghi_reveal(msg.payload);
                auto step = coghi_prover_open(std::move(*coghi), reveal);
                coghi.reset();
                coghi_done = true;
                if (auto* abort = std::get_if<ProofAbort>(&step)) {
                    channel_.send(protocol::encode_abort(abort->reason));
                    out.cheating = true;
                    out.note = "denial: " + abort->reason;
                    return out;
                }
                channel_.send(protocol::encode_coghi_open(std::get<CoGhiOpening>(step)));
                break;
            }
            case Step::abort:
                // The verifier gave up on the current sub-protocol; it may continue with a denial.
                ghi.reset();
                coghi.reset();
                if (coghi_done) {
                    out.note = "verifier aborted: " + protocol::parse_abort(msg.payload);
                    return out;
                }
                ghi_done = true;
                break;
            case Step::verdict:
                if (ghi || coghi) {
                    return desync(out, "verdict during an open proof");
                }
                out.device_verdict = protocol::parse_verdict(msg.payload);
                return out;
            default:
                return desync(out, "unexpected proof message");
            }
        }
        return desync(out, "too many proof messages");
    }

private:
    Outcome& desync(Outcome& out, std::string note)
    {
        channel_.send(protocol::encode_abort(note));
        out.cheating = true;
        out.note = std::move(note);
        return out;
    }

    ProofPoints confirmation_points() const { return mova::confirmation_points(keys_.pub, message_, claimed_); }

    SecureChannel& channel_;
    const KeyPair& keys_;
    std::string message_;
    Signature claimed_;
    OsRandom rng_;
};

}  // namespace

void ServerConfig::validate() const
{
    if (listen_port != 0 && enable_admin && listen_port == admin_port) {
        throw Error("device and admin ports must differ");
    }
    if (ban_threshold == 0) {
        throw Error("ban threshold must be positive");
    }
    params.validate();
}

KeyPair load_or_create_keys(const std::filesystem::path& dir, const DomainParams& params, RandomSource& rng)
{
    const auto pub_path = dir / kPublicKeyFile;
    const auto priv_path = dir / kPrivateKeyFile;
    const bool have_pub = std::filesystem::exists(pub_path);
    const bool have_priv = std::filesystem::exists(priv_path);
    if (!have_pub && !have_priv) {
        KeyPair keys = keygen(params, rng);
        write_text_file_atomic(priv_path, format_private_key(keys.priv));
        write_text_file_atomic(pub_path, format_public_key(keys.pub));
        return keys;
    }
    if (!have_pub || !have_priv) {
        throw FormatError("key files incomplete in " + dir.string() + "; delete both to regenerate");
    }
    PublicKey pub = parse_public_key(read_text_file(pub_path));
    PrivateKey priv = parse_private_key(read_text_file(priv_path));
    check_keypair(pub, priv);
    return KeyPair{std::move(pub), std::move(priv)};
}

namespace {

KeyPair initial_keys(const ServerConfig& config)
{
    config.validate();
    std::filesystem::create_directories(config.data_dir);
    OsRandom rng;
    return load_or_create_keys(config.data_dir, config.params, rng);
}

DhStaticKeyPair initial_dh(const ServerConfig& config)
{
    OsRandom rng;
    return dh_load_or_create(config.data_dir, rng);
}

}  // namespace

Server::Server(ServerConfig config)
    : config_(std::move(config)),
      keys_(initial_keys(config_)),
      dh_(initial_dh(config_)),
      registry_(config_.data_dir, config_.ban_threshold),
      events_(1000, config_.log_events)
{
}

Server::~Server()
{
    stop();
}

void Server::start()
{
    listener_ = std::make_unique<Listener>(config_.bind_address, config_.listen_port);
    if (config_.enable_admin) {
        admin_ = std::make_unique<AdminApi>(registry_, events_);
        admin_->start(config_.bind_address, config_.admin_port);
    }
    accept_thread_ = std::thread([this] { accept_loop(); });
}

void Server::wait()
{
    std::unique_lock lock(stop_mutex_);
    stop_cv_.wait(lock, [this] { return stopped_; });
}

void Server::stop()
{
    if (stopping_.exchange(true)) {
        return;
    }
    if (listener_) {
        listener_->close();
    }
    if (accept_thread_.joinable()) {
        accept_thread_.join();
    }
    {
        std::lock_guard lock(workers_mutex_);
        for (auto& w : workers_) {
            w.socket.shutdown();
        }
    }
    for (auto& w : workers_) {
        if (w.thread.joinable()) {
            w.thread.join();
        }
    }
    workers_.clear();
    events_.close();
    if (admin_) {
        admin_->stop();
    }
    {
        std::lock_guard lock(stop_mutex_);
        stopped_ = true;
    }
    stop_cv_.notify_all();
}

std::uint16_t Server::port() const
{
    return listener_ ? listener_->port() : 0;
}

std::uint16_t Server::admin_port() const
{
    return admin_ ? admin_->port() : 0;
}

void Server::reap_finished()
{
    std::lock_guard lock(workers_mutex_);
    for (auto it = workers_.begin(); it != workers_.end();) {
        if (it->done.load()) {
            it->thread.join();
            it = workers_.erase(it);
        } else {
            ++it;
        }
    }
}

void Server::accept_loop()
{
    while (!stopping_.load()) {
        Socket socket;
        try {
            socket = listener_->accept();
        } catch (const NetError&) {
            if (stopping_.load()) {
                return;
            }
            continue;
        }
        reap_finished();
        std::lock_guard lock(workers_mutex_);
        if (stopping_.load()) {
            return;
        }
        Worker& worker = workers_.emplace_back();
        worker.socket = std::move(socket);
        worker.thread = std::thread([this, &worker] {
            try {
                handle_connection(worker.socket);
            } catch (const std::exception& e) {
                // Last-resort guard: a session must never take the daemon down.
                events_.append(-1, "abort", std::string("session error: ") + e.what());
            }
            worker.socket.shutdown();
            ++sessions_finished_;
            worker.done.store(true);
        });
    }
}

void Server::handle_connection(Socket& socket)
{
    using namespace protocol;
    socket.set_timeout(config_.session_timeout);

    std::int64_t id = 0;
    try {
        id = read_hello(socket);
    } catch (const Error& e) {
        events_.append(-1, "refuse", std::string("malformed hello: ") + e.what());
        return;
    }

    auto refuse = [&](std::int64_t device, const std::string& reason) {
        events_.append(device, "refuse", reason);
        try {
            socket.write_all(encode_ack(Ack{0, Bytes(reason.begin(), reason.end())}));
        } catch (const NetError&) {
        }
    };

    const bool registering = id == kUnregisteredId;
    if (registering) {
        DeviceRecord record = registry_.register_pending();
        id = record.id;
        events_.append(id, "register", "registration requested");
        if (config_.auto_approve) {
            registry_.approve(id);
            events_.append(id, "approve", "auto-approve");
        }
        auto status = registry_.await_decision(id, config_.approval_timeout);
        if (!status || *status != DeviceStatus::active) {
            if (status && *status == DeviceStatus::pending) {
                registry_.remove(id);
                refuse(id, "registration not approved in time");
            } else {
                refuse(id, "registration denied");
            }
            return;
        }
    } else {
        auto record = registry_.get(id);
        if (!record) {
            refuse(id, "unknown device");
            return;
        }
        if (record->status == DeviceStatus::banned) {
            refuse(id, "device banned");
            return;
        }
        if (record->status != DeviceStatus::active) {
            refuse(id, "device not approved");
            return;
        }
    }

    SessionKeys keys;
    try {
        socket.write_all(encode_ack(Ack{port(), registering ? to_bytes(dh_.pub) : Bytes{}}));
        BigInt device_public = read_dh_public(socket);
        keys = dh_agree(dh_.a, device_public, dh_.p, Role::responder);
    } catch (const Error& e) {
        events_.append(id, "abort", std::string("handshake failed: ") + e.what());
        return;
    }
    registry_.touch(id);

    SecureChannel channel(socket, keys);
    try {
        channel.send(encode_welcome(id));
        while (!stopping_.load()) {
            Bytes raw;
            try {
                raw = channel.receive();
            } catch (const NetError&) {
                return;  // device hung up or went idle
            }
            Request request = decode_request(raw);
            switch (request.tag) {
            case Tag::get_key:
                channel.send(encode_key_reply(format_public_key(keys_.pub)));
                break;
            case Tag::sign: {
                Signature sig;
                try {
                    sig = sign(request.message, keys_.priv, keys_.pub);
                } catch (const DomainError& e) {
                    channel.send(encode_error(std::string("message rejected: ") + e.what()));
                    break;
                }
                registry_.record_sign(id);
                events_.append(id, "sign", encode_signature(sig, keys_.pub.params.alphabet));
                channel.send(encode_signature_reply(sig.bits));
                break;
            }
            case Tag::verify: {
                if (request.claimed.size() != keys_.pub.params.l_sig) {
                    channel.send(encode_error("claimed signature has the wrong length"));
                    break;
                }
                Signature truth;
                try {
                    truth = sign(request.message, keys_.priv, keys_.pub);
                } catch (const DomainError& e) {
                    channel.send(encode_error(std::string("message rejected: ") + e.what()));
                    break;
                }
                const bool valid = truth.bits == request.claimed;
                channel.send(encode_proceed());
                VerifyExchange exchange(channel, keys_, request.message, Signature{request.claimed});
                auto outcome = exchange.run();

                const bool failed = !valid || outcome.cheating;
                std::string detail = valid ? "signature valid" : "signature invalid";
                if (outcome.device_verdict) {
                    detail += std::string("; device verdict ") + std::string(verdict_name(*outcome.device_verdict));
                }
                if (!outcome.note.empty()) {
                    detail += "; " + outcome.note;
                }
                DeviceRecord after = registry_.record_verify(id, failed, detail);
                events_.append(id, failed ? "verify-invalid" : "verify-valid", detail);
                if (outcome.cheating) {
                    events_.append(id, "abort", outcome.note);
                }
                if (after.status == DeviceStatus::banned) {
                    events_.append(id, "ban", "failure threshold reached");
                    return;
                }
                if (outcome.cheating) {
                    return;
                }
                break;
            }
            default:
                channel.send(encode_error("unknown command"));
                break;
            }
        }
    } catch (const NetError& e) {
        events_.append(id, "abort", std::string("connection lost: ") + e.what());
    } catch (const Error& e) {
        // ChannelError (bad padding, bad frame) or WireError (malformed message).
        DeviceRecord after = registry_.record_failure(id, e.what());
        events_.append(id, "abort", e.what());
        if (after.status == DeviceStatus::banned) {
            events_.append(id, "ban", "failure threshold reached");
        }
    }
}

}  // namespace mova
