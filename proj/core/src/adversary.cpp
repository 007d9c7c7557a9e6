#include "qpsim/adversary.hpp"

#include <stdexcept>

#include "qpsim/errors.hpp"

namespace qpsim {

namespace {

struct Honest final : AdversaryStrategy {
    std::string name() const override { return "honest"; }
};

// Random Pauli on every held wire once the sharing is done (and before
// each mpqc gate).
struct PauliTamper final : AdversaryStrategy {
    std::string name() const override { return "pauli_tamper"; }

    void tamper(AdversaryContext& ctx, const std::vector<WireId>& held) {
        const std::uint32_t p = ctx.config().p;
        for (auto w : held) {
            Fel xe = static_cast<Fel>(ctx.rng()() % p);
            Fel ze = static_cast<Fel>(ctx.rng()() % p);
            if (xe == 0 && ze == 0) continue;
            ctx.apply_pauli({w}, PauliOperator::single(1, 0, xe, ze));
        }
        if (!held.empty()) ctx.note({{"tampered_wires", held.size()}});
    }

    void on_post_sharing(AdversaryContext& ctx, const std::vector<WireId>& held) override {
        tamper(ctx, held);
    }
    void on_mpqc_round(AdversaryContext& ctx, const std::vector<WireId>& held) override {
        tamper(ctx, held);
    }
};

// Corrupt dealer distributes the data system as a classical word at a
// fixed distance from the code.
struct BadBranchDealer final : AdversaryStrategy {
    explicit BadBranchDealer(std::size_t distance) : distance_(distance) {}
    std::string name() const override { return "bad_branch_dealer"; }

    bool dealer_prepare_system(AdversaryContext& ctx, std::size_t l, std::size_t m,
                               SystemKind kind, const CssCode& code, Player dealer,
                               CodeBlock& out) override {
        if (l != 0 || m != 0 || kind != SystemKind::Data) return false;
        const PrimeField& f = code.f;
        // random codeword plus a weight-`distance_` error, rejected until
        // its true distance from the code is exactly distance_
        Word word;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::vector<Fel> rnd(code.delta);
            for (auto& r : rnd) r = static_cast<Fel>(ctx.rng()() % f.p());
            word = rs_encode(code.V, static_cast<Fel>(ctx.rng()() % f.p()), rnd);
            std::vector<std::size_t> pos(code.n);
            for (std::size_t i = 0; i < code.n; ++i) pos[i] = i;
            for (std::size_t c = 0; c < distance_; ++c) {
                std::size_t j = c + ctx.rng()() % (code.n - c);
                std::swap(pos[c], pos[j]);
                word[pos[c]] = f.add(word[pos[c]], 1 + static_cast<Fel>(ctx.rng()() % (f.p() - 1)));
            }
            bool too_close = false;
            for (std::size_t hide = 0; hide < distance_; ++hide) {
                // within distance distance_-1 of some codeword iff the word
                // with one error position erased fits the code
                std::set<std::size_t> era;
                for (std::size_t c = 0; c < distance_; ++c)
                    if (c != hide) era.insert(pos[c] + 1);
                if (in_neighborhood(code.V, word, era)) too_close = true;
            }
            if (distance_ >= 2 && rs_decode(code.V, word).has_value()) too_close = true;
            if (!too_close) break;
        }
        std::vector<WireId> wires;
        for (std::size_t i = 0; i < code.n; ++i) {
            WireId w = ctx.alloc_ancilla(dealer, WireInit::Zero);
            if (word[i] != 0) ctx.apply(GateKind::Shift, {w}, word[i]);
            wires.push_back(w);
        }
        out = CodeBlock{wires, code};
        ctx.note({{"bad_branch_word", word}}, dealer);
        return true;
    }

    std::size_t distance_;
};

// Corrupt dealer claims a proved-|0> sharing but encodes another value.
struct WrongStateDealer final : AdversaryStrategy {
    explicit WrongStateDealer(Fel actual) : actual_(actual) {}
    std::string name() const override { return "wrong_state_dealer"; }

    bool dealer_prepare_system(AdversaryContext& ctx, std::size_t l, std::size_t m,
                               SystemKind kind, const CssCode& code, Player dealer,
                               CodeBlock& out) override {
        if (l != 0 || m != 0) return false;
        (void)kind;
        WireId in = ctx.alloc_ancilla(dealer, WireInit::Zero);
        if (actual_ != 0) ctx.apply(GateKind::Shift, {in}, actual_);
        out = adv_encode(ctx, code, dealer, in);
        ctx.note({{"wrong_state", actual_}}, dealer);
        return true;
    }

    // honest encoder run on adversary-owned wires
    static CodeBlock adv_encode(AdversaryContext& ctx, const CssCode& code, Player dealer,
                                WireId in) {
        std::vector<WireId> wires{in};
        for (std::size_t k = 0; k < code.delta; ++k)
            wires.push_back(ctx.alloc_ancilla(dealer, WireInit::UniformSum));
        for (std::size_t k = code.delta + 1; k < code.n; ++k)
            wires.push_back(ctx.alloc_ancilla(dealer, WireInit::Zero));
        std::vector<std::uint32_t> idx(code.n);
        for (std::uint32_t i = 0; i < code.n; ++i) idx[i] = i;
        for (const auto& g : linear_gate_sequence(code.f, vandermonde(code.f, code.n), idx)) {
            std::vector<WireId> ws;
            for (std::size_t i = 0; i < g.arity(); ++i) ws.push_back(wires[g.wires[i]]);
            ctx.apply(g.kind, ws, g.scalar);
        }
        return CodeBlock{wires, code};
    }

    Fel actual_;
};

// Broadcasts junk instead of measured challenge values.
struct LyingBroadcaster final : AdversaryStrategy {
    std::string name() const override { return "lying_broadcaster"; }

    Fel on_broadcast_value(AdversaryContext& ctx, Player pl, Fel) override {
        Fel lie = static_cast<Fel>(ctx.rng()() % ctx.config().p);
        ctx.note({{"lie", lie}}, pl);
        return lie;
    }
};

// Random Clifford circuit over the held wires, entangling them with fresh
// adversary ancillas.
struct CliffordWireAttack final : AdversaryStrategy {
    std::string name() const override { return "clifford_wire_attack"; }

    void on_post_sharing(AdversaryContext& ctx, const std::vector<WireId>& held) override {
        if (held.empty()) return;
        const std::uint32_t p = ctx.config().p;
        Player owner = *ctx.config().corrupt.begin();
        WireId anc = ctx.alloc_ancilla(owner, WireInit::Zero);
        auto& rng = ctx.rng();
        for (std::size_t step = 0; step < held.size() * 2; ++step) {
            WireId w = held[rng() % held.size()];
            Fel c = 1 + static_cast<Fel>(rng() % (p - 1));
            switch (rng() % 5) {
                case 0: ctx.apply(GateKind::Shift, {w}, c); break;
                case 1: ctx.apply(GateKind::PhaseShift, {w}, c); break;
                case 2: ctx.apply(GateKind::ScalarMul, {w}, c); break;
                case 3: ctx.apply(GateKind::Fourier, {w}, 1); break;
                case 4: ctx.apply(GateKind::Sum, {w, anc}, c); break;
            }
        }
        ctx.note({{"clifford_attack_ops", held.size() * 2}});
    }
};

}  // namespace

std::unique_ptr<AdversaryStrategy> make_strategy(const std::string& name,
                                                 const nlohmann::json& params) {
    if (name == "honest") return std::make_unique<Honest>();
    if (name == "pauli_tamper") return std::make_unique<PauliTamper>();
    if (name == "bad_branch_dealer")
        return std::make_unique<BadBranchDealer>(params.value("distance", 2));
    if (name == "wrong_state_dealer")
        return std::make_unique<WrongStateDealer>(params.value("actual", 1));
    if (name == "lying_broadcaster") return std::make_unique<LyingBroadcaster>();
    if (name == "clifford_wire_attack") return std::make_unique<CliffordWireAttack>();
    throw std::invalid_argument("unknown strategy: " + name);
}

std::vector<std::string> strategy_names() {
    return {"honest",       "pauli_tamper",       "bad_branch_dealer",
            "wrong_state_dealer", "lying_broadcaster", "clifford_wire_attack"};
}

}  // namespace qpsim
