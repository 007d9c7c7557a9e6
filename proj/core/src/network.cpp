#include "qpsim/network.hpp"

#include <sstream>

#include "qpsim/errors.hpp"

namespace qpsim {

void NetworkConfig::validate() const {
    if (!PrimeField::is_prime(p)) throw ConfigRejected("p must be prime");
    if (p <= n) throw ConfigRejected("need p > n");
    if (corrupt.size() > t) throw ConfigRejected("more corrupted players than the threshold t");
    for (Player pl : corrupt)
        if (pl < 1 || pl > n) throw ConfigRejected("corrupt player out of range");
    std::size_t want = regime == Regime::Vqss ? 4 * t + 1 : 6 * t + 1;
    if (n != want)
        throw ConfigRejected(regime == Regime::Vqss ? "vqss requires n = 4t+1"
                                                    : "mpqc requires n = 6t+1");
    if (k < 1 || k > 8) throw ConfigRejected("k must be in 1..8");
}

nlohmann::json TranscriptEvent::to_json() const {
    return {{"round", round}, {"kind", kind}, {"actor", actor}, {"payload", payload}};
}

TranscriptEvent TranscriptEvent::from_json(const nlohmann::json& j) {
    TranscriptEvent e;
    e.round = j.at("round").get<std::size_t>();
    e.kind = j.at("kind").get<std::string>();
    e.actor = j.at("actor").get<Player>();
    e.payload = j.at("payload");
    return e;
}

bool TranscriptEvent::operator==(const TranscriptEvent& o) const {
    return round == o.round && kind == o.kind && actor == o.actor && payload == o.payload;
}

std::string Transcript::to_jsonl() const {
    std::ostringstream out;
    for (const auto& e : events) out << e.to_json().dump() << "\n";
    return out.str();
}

Transcript Transcript::from_jsonl(const std::string& text) {
    Transcript t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        t.events.push_back(TranscriptEvent::from_json(nlohmann::json::parse(line)));
    }
    return t;
}

std::size_t Transcript::count(const std::string& kind) const {
    std::size_t c = 0;
    for (const auto& e : events)
        if (e.kind == kind) ++c;
    return c;
}

NetworkSim::NetworkSim(NetworkConfig cfg)
    : cfg_(cfg),
      eng_(PrimeField(cfg.p), EngineConfig{cfg.backend, cfg.support_cap}),
      rng_(cfg.seed) {
    cfg_.validate();
}

void NetworkSim::advance_round(const std::string& label) {
    ++round_;
    log_.events.push_back({round_, "csend", 0, {{"phase", label}}});
}

std::vector<WireId> NetworkSim::alloc_wires(Player owner, const std::vector<WireInit>& inits) {
    auto ws = eng_.alloc(inits);
    for (auto w : ws) owner_[w] = owner;
    return ws;
}

Player NetworkSim::owner(WireId w) const {
    auto it = owner_.find(w);
    return it == owner_.end() ? 0 : it->second;
}

void NetworkSim::claim_wires(Player owner, const std::vector<WireId>& wires) {
    for (auto w : wires) owner_[w] = owner;
}

void NetworkSim::forget_wire(WireId w) {
    if (!eng_.wire_alive(w)) return;
    eng_.drop_deterministic(w);
    owner_.erase(w);
}

void NetworkSim::deliver_quantum(Player from, Player to, const std::vector<WireId>& wires) {
    for (auto w : wires) {
        auto it = owner_.find(w);
        if (it == owner_.end() || it->second != from)
            throw OwnershipViolation("deliver_quantum: sender does not own the wire");
        it->second = to;
    }
    log_.events.push_back(
        {round_, "qsend", from, {{"to", to}, {"count", wires.size()}}});
}

void NetworkSim::send_classical(Player from, Player to, const nlohmann::json& payload) {
    log_.events.push_back({round_, "csend", from, {{"to", to}, {"payload", payload}}});
}

void NetworkSim::broadcast(Player from, const nlohmann::json& value) {
    broadcasts_.push_back(value);
    log_.events.push_back({round_, "broadcast", from, {{"value", value}}});
}

std::vector<Fel> NetworkSim::public_coin(std::size_t count) {
    std::vector<Fel> coins(count);
    std::uniform_int_distribution<std::uint32_t> dist(0, cfg_.p - 1);
    for (auto& c : coins) c = dist(rng_);
    log_.events.push_back({round_, "coin", 0, {{"values", coins}}});
    return coins;
}

Fel NetworkSim::measure_owned(Player pl, WireId w, bool drop) {
    if (owner(w) != pl) throw OwnershipViolation("measure_owned: not the owner");
    Fel v = drop ? eng_.measure_drop(w, rng_) : eng_.measure(w, rng_);
    log_.events.push_back({round_, "measure", pl, {{"value", v}}});
    if (drop) owner_.erase(w);
    return v;
}

void NetworkSim::log_adversary(Player actor, const nlohmann::json& what) {
    log_.events.push_back({round_, "adversary_action", actor, what});
}

void NetworkSim::log_set_update(const nlohmann::json& what) {
    log_.events.push_back({round_, "set_update", 0, what});
}

std::vector<WireId> AdversaryContext::corrupt_wires() const {
    std::vector<WireId> out;
    for (const auto& [w, pl] : net_.owner_)
        if (net_.is_corrupt(pl)) out.push_back(w);
    return out;
}

bool AdversaryContext::owns(WireId w) const { return net_.is_corrupt(net_.owner(w)); }

void AdversaryContext::check(const std::vector<WireId>& wires) const {
    for (auto w : wires)
        if (!owns(w))
            throw OwnershipViolation("adversary touched a wire owned by an honest player");
}

void AdversaryContext::apply(GateKind kind, const std::vector<WireId>& wires, Fel scalar) {
    check(wires);
    net_.eng_.apply(kind, wires, scalar);
}

void AdversaryContext::apply_pauli(const std::vector<WireId>& wires, const PauliOperator& p) {
    check(wires);
    net_.eng_.apply_pauli(wires, p);
}

Fel AdversaryContext::measure(WireId w) {
    check({w});
    return net_.eng_.measure(w, net_.rng_);
}

WireId AdversaryContext::alloc_ancilla(Player owner, WireInit init) {
    if (!net_.is_corrupt(owner))
        throw OwnershipViolation("adversary ancilla must belong to a corrupted player");
    return net_.alloc_wires(owner, {init})[0];
}

void AdversaryContext::note(const nlohmann::json& what, Player actor) {
    net_.log_adversary(actor, what);
}

}  // namespace qpsim
