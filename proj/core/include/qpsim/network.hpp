#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpsim/engine.hpp"

namespace qpsim {

/// Players are 1..n; 0 is reserved for "nobody".
using Player = std::size_t;

enum class Regime { Vqss, Mpqc };

struct NetworkConfig {
    std::size_t n = 5;
    std::size_t t = 1;
    std::uint32_t p = 7;
    std::size_t k = 4;
    std::set<Player> corrupt;
    std::uint64_t seed = 0;
    Regime regime = Regime::Vqss;
    BackendKind backend = BackendKind::Auto;
    std::size_t support_cap = 1'000'000;

    /// Throws ConfigRejected on threshold or regime violations.
    void validate() const;
};

struct TranscriptEvent {
    std::size_t round = 0;
    std::string kind;  // qsend | csend | broadcast | coin | measure | adversary_action | set_update
    Player actor = 0;
    nlohmann::json payload;

    nlohmann::json to_json() const;
    static TranscriptEvent from_json(const nlohmann::json& j);
    bool operator==(const TranscriptEvent& o) const;
};

struct Transcript {
    std::vector<TranscriptEvent> events;

    std::string to_jsonl() const;
    static Transcript from_jsonl(const std::string& text);
    bool operator==(const Transcript& o) const { return events == o.events; }

    std::size_t count(const std::string& kind) const;
};

/// Synchronous network simulation: wire ownership, pairwise quantum
/// transfers, authenticated broadcast, trusted public coins, a round
/// clock, and the event log. Honest protocol logic calls this directly;
/// adversarial access goes through AdversaryContext which enforces that
/// strategies only ever touch corrupted players' wires.
class NetworkSim {
public:
    NetworkSim(NetworkConfig cfg);

    const NetworkConfig& config() const { return cfg_; }
    QuantumEngine& engine() { return eng_; }
    std::mt19937_64& rng() { return rng_; }
    Transcript& transcript() { return log_; }
    const Transcript& transcript() const { return log_; }

    bool is_corrupt(Player pl) const { return cfg_.corrupt.count(pl) != 0; }

    std::size_t round() const { return round_; }
    void advance_round(const std::string& label);

    std::vector<WireId> alloc_wires(Player owner, const std::vector<WireInit>& inits);
    Player owner(WireId w) const;

    /// Register ownership for wires allocated straight through the engine
    /// (the encoder's internal ancillas).
    void claim_wires(Player owner, const std::vector<WireId>& wires);

    /// Measure and discard a wire that is done (its value already public).
    void forget_wire(WireId w);

    /// Transfer wire ownership; throws OwnershipViolation unless `from`
    /// owns every wire.
    void deliver_quantum(Player from, Player to, const std::vector<WireId>& wires);

    /// Classical point-to-point message (logged only).
    void send_classical(Player from, Player to, const nlohmann::json& payload);

    /// One value seen identically by all players; no equivocation is
    /// representable.
    void broadcast(Player from, const nlohmann::json& value);

    /// Trusted beacon standing in for the assumed classical MPC.
    std::vector<Fel> public_coin(std::size_t count);

    Fel measure_owned(Player pl, WireId w, bool drop = true);

    void log_adversary(Player actor, const nlohmann::json& what);
    void log_set_update(const nlohmann::json& what);

    /// The broadcast history as seen by every player.
    const std::vector<nlohmann::json>& broadcast_log() const { return broadcasts_; }

private:
    friend class AdversaryContext;

    NetworkConfig cfg_;
    QuantumEngine eng_;
    std::mt19937_64 rng_;
    Transcript log_;
    std::size_t round_ = 0;
    std::map<WireId, Player> owner_;
    std::vector<nlohmann::json> broadcasts_;
};

/// The only handle a strategy gets: every quantum operation checks that
/// the touched wires belong to corrupted players.
class AdversaryContext {
public:
    explicit AdversaryContext(NetworkSim& net) : net_(net) {}

    const NetworkConfig& config() const { return net_.config(); }
    std::mt19937_64& rng() { return net_.rng_; }
    const std::vector<nlohmann::json>& broadcasts() const { return net_.broadcasts_; }

    std::vector<WireId> corrupt_wires() const;
    bool owns(WireId w) const;

    void apply(GateKind kind, const std::vector<WireId>& wires, Fel scalar = 1);
    void apply_pauli(const std::vector<WireId>& wires, const PauliOperator& p);
    Fel measure(WireId w);
    WireId alloc_ancilla(Player owner, WireInit init);

    void note(const nlohmann::json& what, Player actor = 0);

private:
    void check(const std::vector<WireId>& wires) const;
    NetworkSim& net_;
};

}  // namespace qpsim
