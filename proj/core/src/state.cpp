#include "qpsim/state.hpp"

#include <cmath>

#include "qpsim/errors.hpp"

namespace qpsim {

void apply_gate(QuantumState& s, const GateOp& g, std::mt19937_64*) {
    std::visit([&](auto& backend) { backend.apply_gate(g); }, s);
}

void apply_pauli(QuantumState& s, const PauliOperator& p) {
    std::visit([&](auto& backend) { backend.apply_pauli(p); }, s);
}

Fel measure_computational(QuantumState& s, std::uint32_t wire, std::mt19937_64& rng,
                          std::optional<Fel> forced) {
    if (auto* t = std::get_if<StabilizerTableau>(&s)) return t->measure_wire(wire, rng, forced).outcome;
    if (auto* sp = std::get_if<SparseState>(&s)) return sp->measure_wire(wire, rng, forced);
    return std::get<DenseState>(s).measure_wire(wire, rng, forced);
}

Fel measure_fourier(QuantumState& s, std::uint32_t wire, std::mt19937_64& rng,
                    std::optional<Fel> forced) {
    apply_gate(s, GateOp::fourier(wire));
    return measure_computational(s, wire, rng, forced);
}

std::size_t state_num_wires(const QuantumState& s) {
    return std::visit([](const auto& b) { return b.num_wires(); }, s);
}

const PrimeField& state_field(const QuantumState& s) {
    return std::visit([](const auto& b) -> const PrimeField& { return b.field(); }, s);
}

namespace {

// Exact outcome distribution of measuring every wire of a stabilizer
// state, by branching over sequential wire measurements.
void tableau_distribution(const StabilizerTableau& t, std::uint32_t wire, double prob,
                          std::size_t idx_base, std::size_t stride,
                          std::vector<double>& out, std::mt19937_64& rng) {
    if (wire == t.num_wires()) {
        out[idx_base] += prob;
        return;
    }
    // probe determinism on a copy
    StabilizerTableau probe = t;
    auto r = probe.measure_wire(wire, rng);
    if (r.deterministic) {
        tableau_distribution(probe, wire + 1, prob, idx_base + r.outcome * stride,
                             stride * t.field().p(), out, rng);
        return;
    }
    const std::uint32_t p = t.field().p();
    for (Fel v = 0; v < p; ++v) {
        StabilizerTableau branch = t;
        branch.measure_wire(wire, rng, v);
        tableau_distribution(branch, wire + 1, prob / p, idx_base + v * stride, stride * p, out,
                             rng);
    }
}

double dist_deviation(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

double dense_oracle_compare(const PrimeField& f, const std::vector<WireInit>& wires,
                            const std::vector<GateOp>& circuit) {
    std::size_t dim = 1;
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (dim > DenseState::kMaxDim / f.p()) throw OracleTooLarge("dense_oracle_compare");
        dim *= f.p();
    }

    DenseState dense(f, wires);
    for (const auto& g : circuit) dense.apply_gate(g);
    auto dense_dist = dense.full_distribution();

    bool clifford = true;
    for (const auto& g : circuit)
        if (!g.is_clifford()) clifford = false;

    double worst = 0;
    std::mt19937_64 rng(0);

    if (clifford) {
        StabilizerTableau tab(f, wires);
        for (const auto& g : circuit) tab.apply_gate(g);
        std::vector<double> tab_dist(dim, 0.0);
        tableau_distribution(tab, 0, 1.0, 0, 1, tab_dist, rng);
        worst = std::max(worst, dist_deviation(tab_dist, dense_dist));
        // stabilizer membership against the dense vector
        for (std::size_t i = 0; i < tab.num_wires(); ++i)
            worst = std::max(worst, dense.stabilizer_deviation(tab.stabilizer(i)));
    }

    SparseState sparse(f, wires, DenseState::kMaxDim);
    for (const auto& g : circuit) sparse.apply_gate(g);
    auto sd = DenseState::from_sparse(sparse).full_distribution();
    worst = std::max(worst, dist_deviation(sd, dense_dist));
    return worst;
}

}  // namespace qpsim
