#include "qpsim/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "qpsim/errors.hpp"

namespace qpsim {

// ---- linear.hpp ----

Matrix vandermonde(const PrimeField& f, std::size_t n) {
    Matrix m(n, std::vector<Fel>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = f.pow(static_cast<Fel>(i + 1), j);
    return m;
}

Matrix matrix_inverse(const PrimeField& f, Matrix m) {
    const std::size_t n = m.size();
    Matrix inv(n, std::vector<Fel>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("matrix_inverse: singular");
        std::swap(m[col], m[piv]);
        std::swap(inv[col], inv[piv]);
        Fel ic = f.inv(m[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = f.mul(m[col][j], ic);
            inv[col][j] = f.mul(inv[col][j], ic);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Fel c = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] = f.sub(m[r][j], f.mul(c, m[col][j]));
                inv[r][j] = f.sub(inv[r][j], f.mul(c, inv[col][j]));
            }
        }
    }
    return inv;
}

std::vector<Fel> matrix_apply(const PrimeField& f, const Matrix& m, const std::vector<Fel>& v) {
    std::vector<Fel> out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            out[i] = f.add(out[i], f.mul(m[i][j], v[j]));
    return out;
}

std::vector<GateOp> linear_gate_sequence(const PrimeField& f, const Matrix& m,
                                         const std::vector<std::uint32_t>& wires) {
    const std::size_t n = m.size();
    if (wires.size() != n) throw std::invalid_argument("linear_gate_sequence: arity");
    struct Op {
        bool scale;
        std::size_t dst, src;
        Fel c;
    };
    std::vector<Op> ops;
    Matrix a = m;
    // Reduce a to the identity with row operations; avoid swaps by adding a
    // pivot row upward when the diagonal is zero.
    for (std::size_t col = 0; col < n; ++col) {
        if (a[col][col] == 0) {
            std::size_t piv = col + 1;
            while (piv < n && a[piv][col] == 0) ++piv;
            if (piv == n) throw std::invalid_argument("linear_gate_sequence: singular");
            for (std::size_t j = 0; j < n; ++j) a[col][j] = f.add(a[col][j], a[piv][j]);
            ops.push_back({false, col, piv, 1});
        }
        if (a[col][col] != 1) {
            Fel ic = f.inv(a[col][col]);
            for (std::size_t j = 0; j < n; ++j) a[col][j] = f.mul(a[col][j], ic);
            ops.push_back({true, col, col, ic});
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Fel c = a[r][col];
            for (std::size_t j = 0; j < n; ++j) a[r][j] = f.sub(a[r][j], f.mul(c, a[col][j]));
            ops.push_back({false, r, col, f.neg(c)});
        }
    }
    // ops reduce M to I, so M = op_1^{-1} ... op_k^{-1}; apply inverses in
    // reverse order.
    std::vector<GateOp> gates;
    gates.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->scale)
            gates.push_back(GateOp::scalar_mul(wires[it->dst], f.inv(it->c)));
        else
            gates.push_back(GateOp::sum(wires[it->src], wires[it->dst], f.neg(it->c)));
    }
    return gates;
}

// ---- QuantumEngine ----

QuantumEngine::QuantumEngine(PrimeField f, EngineConfig cfg) : field_(f), cfg_(cfg) {}

QuantumState QuantumEngine::make_state(const std::vector<WireInit>& inits) const {
    switch (cfg_.backend) {
        case BackendKind::Sparse:
            return SparseState(field_, inits, cfg_.support_cap);
        case BackendKind::Dense:
            return DenseState(field_, inits);
        default:
            return StabilizerTableau(field_, inits);
    }
}

std::vector<WireId> QuantumEngine::alloc(const std::vector<WireInit>& inits) {
    std::vector<WireId> ids;
    ids.reserve(inits.size());
    Register reg{make_state(inits), {}};
    std::size_t ri = regs_.size();
    for (std::uint32_t i = 0; i < inits.size(); ++i) {
        WireId id = where_.size();
        where_.push_back({ri, i});
        reg.wires.push_back(id);
        ids.push_back(id);
    }
    regs_.push_back(std::move(reg));
    return ids;
}

WireId QuantumEngine::alloc_one(WireInit init) { return alloc({init})[0]; }

std::size_t QuantumEngine::reg_of(WireId w) const {
    if (w >= where_.size() || where_[w].first == SIZE_MAX)
        throw std::invalid_argument("engine: dead or unknown wire");
    return where_[w].first;
}
std::uint32_t QuantumEngine::local_of(WireId w) const { return where_[w].second; }

void QuantumEngine::to_sparse(std::size_t reg) {
    auto& r = regs_[reg];
    if (std::holds_alternative<SparseState>(r.state)) return;
    if (auto* t = std::get_if<StabilizerTableau>(&r.state)) {
        r.state = SparseState::from_tableau(*t, cfg_.support_cap);
    } else {
        r.state = std::get<DenseState>(r.state).to_sparse(cfg_.support_cap);
    }
}

std::size_t QuantumEngine::merge(const std::vector<WireId>& wires) {
    std::vector<std::size_t> regs;
    for (auto w : wires) {
        auto r = reg_of(w);
        if (std::find(regs.begin(), regs.end(), r) == regs.end()) regs.push_back(r);
    }
    std::size_t dst = regs[0];
    for (std::size_t i = 1; i < regs.size(); ++i) {
        std::size_t src = regs[i];
        auto& rd = regs_[dst];
        auto& rs = regs_[src];
        bool both_tab = std::holds_alternative<StabilizerTableau>(rd.state) &&
                        std::holds_alternative<StabilizerTableau>(rs.state);
        bool both_dense = std::holds_alternative<DenseState>(rd.state) &&
                          std::holds_alternative<DenseState>(rs.state);
        if (both_tab) {
            std::get<StabilizerTableau>(rd.state).absorb(std::get<StabilizerTableau>(rs.state));
        } else if (both_dense) {
            // tensor densely via sparse roundtrip
            to_sparse(dst);
            to_sparse(src);
            std::get<SparseState>(rd.state).absorb(std::get<SparseState>(rs.state));
        } else {
            to_sparse(dst);
            to_sparse(src);
            std::get<SparseState>(rd.state).absorb(std::get<SparseState>(rs.state));
        }
        std::uint32_t base = static_cast<std::uint32_t>(rd.wires.size());
        for (std::uint32_t j = 0; j < rs.wires.size(); ++j) {
            WireId id = rs.wires[j];
            where_[id] = {dst, base + j};
            rd.wires.push_back(id);
        }
        rs.wires.clear();
        rs.state = StabilizerTableau(field_, {});
    }
    return dst;
}

void QuantumEngine::apply(GateKind kind, const std::vector<WireId>& wires, Fel scalar) {
    std::size_t reg = merge(wires);
    GateOp g{kind, {}, scalar};
    for (std::size_t i = 0; i < wires.size(); ++i) g.wires[i] = local_of(wires[i]);
    auto& st = regs_[reg].state;
    if (kind == GateKind::Toffoli && std::holds_alternative<StabilizerTableau>(st)) {
        if (cfg_.backend == BackendKind::Tableau)
            throw UnsupportedGate("Toffoli on a tableau register");
        to_sparse(reg);
    }
    // local indices may have changed if merge converted; recompute
    for (std::size_t i = 0; i < wires.size(); ++i) g.wires[i] = local_of(wires[i]);
    apply_gate(regs_[reg].state, g);
}

void QuantumEngine::apply_pauli(const std::vector<WireId>& wires, const PauliOperator& p) {
    std::size_t reg = merge(wires);
    auto& r = regs_[reg];
    PauliOperator full = PauliOperator::identity(r.wires.size());
    full.phase = p.phase;
    for (std::size_t i = 0; i < wires.size(); ++i) {
        full.x[local_of(wires[i])] = p.x[i];
        full.z[local_of(wires[i])] = p.z[i];
    }
    qpsim::apply_pauli(r.state, full);
}

void QuantumEngine::apply_linear(const Matrix& m, const std::vector<WireId>& wires) {
    std::size_t reg = merge(wires);
    std::vector<std::uint32_t> local(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) local[i] = local_of(wires[i]);
    for (const auto& g : linear_gate_sequence(field_, m, local)) apply_gate(regs_[reg].state, g);
}

Fel QuantumEngine::measure(WireId w, std::mt19937_64& rng, std::optional<Fel> forced) {
    auto& r = regs_[reg_of(w)];
    return measure_computational(r.state, local_of(w), rng, forced);
}

Fel QuantumEngine::measure_drop(WireId w, std::mt19937_64& rng, std::optional<Fel> forced) {
    Fel v = measure(w, rng, forced);
    drop_local(reg_of(w), local_of(w));
    return v;
}

Fel QuantumEngine::measure_pauli(const std::vector<WireId>& wires, const PauliOperator& p,
                                 std::mt19937_64& rng, std::optional<Fel> forced) {
    std::size_t reg = merge(wires);
    auto& r = regs_[reg];
    PauliOperator full = PauliOperator::identity(r.wires.size());
    full.phase = p.phase;
    for (std::size_t i = 0; i < wires.size(); ++i) {
        full.x[local_of(wires[i])] = p.x[i];
        full.z[local_of(wires[i])] = p.z[i];
    }
    if (auto* t = std::get_if<StabilizerTableau>(&r.state))
        return t->measure_pauli(full, rng, forced).outcome;
    if (auto* s = std::get_if<SparseState>(&r.state)) return s->measure_pauli(full, rng, forced);
    // dense: build the projector sum via sparse conversion
    auto sp = std::get<DenseState>(r.state).to_sparse(cfg_.support_cap);
    Fel out = sp.measure_pauli(full, rng, forced);
    r.state = DenseState::from_sparse(sp);
    return out;
}

bool QuantumEngine::syndrome_is_zero(const std::vector<WireId>& wires,
                                     const PauliOperator& p) const {
    // all wires must live in one register already
    std::size_t reg = reg_of(wires[0]);
    for (auto w : wires)
        if (reg_of(w) != reg) return false;  // cross-register: not stabilized
    const auto& r = regs_[reg];
    PauliOperator full = PauliOperator::identity(r.wires.size());
    full.phase = p.phase;
    for (std::size_t i = 0; i < wires.size(); ++i) {
        full.x[local_of(wires[i])] = p.x[i];
        full.z[local_of(wires[i])] = p.z[i];
    }
    if (auto* t = std::get_if<StabilizerTableau>(&r.state)) return t->contains(full);
    if (auto* s = std::get_if<SparseState>(&r.state)) {
        SparseState copy = *s;
        copy.apply_pauli(full);
        Amp ip = s->inner_product(copy);
        return std::abs(ip - Amp{1, 0}) < 1e-9;
    }
    return std::get<DenseState>(r.state).stabilizer_deviation(full) < 1e-9;
}

std::vector<Fel> QuantumEngine::sum_measure(const std::vector<WireId>& targets,
                                            const std::vector<WireId>& controls, Fel coeff,
                                            std::mt19937_64& rng) {
    if (targets.size() != controls.size()) throw std::invalid_argument("sum_measure: arity");
    if (coeff % field_.p() == 0) {
        std::vector<Fel> outcomes;
        outcomes.reserve(targets.size());
        for (auto w : targets) outcomes.push_back(measure(w, rng));
        return outcomes;
    }
    std::size_t treg = reg_of(targets[0]);
    bool same_reg = true;
    for (auto w : targets) same_reg &= (reg_of(w) == treg);
    std::size_t creg = reg_of(controls[0]);
    for (auto w : controls) same_reg &= (reg_of(w) == creg);

    // Fuse whenever two distinct registers meet and either side is sparse:
    // the stepwise path would materialize the full product support.
    bool fused = same_reg && treg != creg &&
                 (std::holds_alternative<SparseState>(regs_[treg].state) ||
                  std::holds_alternative<SparseState>(regs_[creg].state));
    if (fused) {
        to_sparse(treg);
        to_sparse(creg);
        std::vector<std::uint32_t> lt(targets.size()), lc(controls.size());
        for (std::size_t i = 0; i < targets.size(); ++i) lt[i] = local_of(targets[i]);
        for (std::size_t i = 0; i < controls.size(); ++i) lc[i] = local_of(controls[i]);
        std::vector<Fel> outcomes;
        auto merged = SparseState::sum_measure_merge(std::get<SparseState>(regs_[treg].state),
                                                     std::get<SparseState>(regs_[creg].state), lt,
                                                     lc, coeff, rng, outcomes);
        std::uint32_t base = static_cast<std::uint32_t>(regs_[treg].wires.size());
        regs_[treg].state = std::move(merged);
        for (std::uint32_t j = 0; j < regs_[creg].wires.size(); ++j) {
            WireId id = regs_[creg].wires[j];
            where_[id] = {treg, base + j};
            regs_[treg].wires.push_back(id);
        }
        regs_[creg].wires.clear();
        regs_[creg].state = StabilizerTableau(field_, {});
        return outcomes;
    }

    std::vector<Fel> outcomes;
    outcomes.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        apply(GateKind::Sum, {controls[i], targets[i]}, coeff);
        outcomes.push_back(measure(targets[i], rng));
    }
    return outcomes;
}

void QuantumEngine::drop_local(std::size_t reg, std::uint32_t local) {
    auto& r = regs_[reg];
    WireId id = r.wires[local];
    if (auto* t = std::get_if<StabilizerTableau>(&r.state)) {
        t->detach_wire(local);
    } else if (auto* s = std::get_if<SparseState>(&r.state)) {
        s->detach_wire(local);
    } else {
        // dense: keep only the measured slice
        auto& d = std::get<DenseState>(r.state);
        auto sp = d.to_sparse(cfg_.support_cap);
        sp.detach_wire(local);
        r.state = DenseState::from_sparse(sp);
    }
    where_[id] = {SIZE_MAX, 0};
    r.wires.erase(r.wires.begin() + local);
    for (std::uint32_t j = local; j < r.wires.size(); ++j) where_[r.wires[j]] = {reg, j};
}

Fel QuantumEngine::drop_deterministic(WireId w) {
    std::size_t reg = reg_of(w);
    std::uint32_t local = local_of(w);
    auto& r = regs_[reg];
    Fel v = 0;
    if (auto* t = std::get_if<StabilizerTableau>(&r.state)) {
        v = t->detach_wire(local);
    } else if (auto* s = std::get_if<SparseState>(&r.state)) {
        v = s->detach_wire(local);
    } else {
        auto sp = std::get<DenseState>(r.state).to_sparse(cfg_.support_cap);
        v = sp.detach_wire(local);
        r.state = DenseState::from_sparse(sp);
    }
    where_[w] = {SIZE_MAX, 0};
    r.wires.erase(r.wires.begin() + local);
    for (std::uint32_t j = local; j < r.wires.size(); ++j) where_[r.wires[j]] = {reg, j};
    return v;
}

void QuantumEngine::drop_uniform(WireId w) {
    apply(GateKind::FourierInverse, {w}, 1);
    drop_deterministic(w);
}

SparseState QuantumEngine::pure_state_on(const std::vector<WireId>& wires) {
    std::size_t reg = merge(wires);
    auto& r = regs_[reg];
    if (r.wires.size() != wires.size())
        throw std::logic_error("pure_state_on: register holds extra wires");
    to_sparse(reg);
    const auto& s = std::get<SparseState>(r.state);
    // reorder to the requested wire order
    std::vector<std::uint32_t> perm(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) perm[i] = local_of(wires[i]);
    std::vector<std::pair<BasisKey, Amp>> entries;
    entries.reserve(s.support());
    for (auto& [k, a] : s.amplitudes()) {
        BasisKey nk{};
        for (std::uint32_t i = 0; i < wires.size(); ++i) nk.set(i, k.get(perm[i]));
        entries.push_back({nk, a});
    }
    return SparseState::from_entries(field_, static_cast<std::uint32_t>(wires.size()), entries,
                                     cfg_.support_cap);
}

std::vector<Amp> QuantumEngine::reduced_density(const std::vector<WireId>& wires) {
    std::size_t reg = merge(wires);
    auto& r = regs_[reg];
    std::vector<std::uint32_t> local(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) local[i] = local_of(wires[i]);
    if (auto* t = std::get_if<StabilizerTableau>(&r.state)) {
        // rho_A = p^{-|A|} sum over the local stabilizer subgroup
        if (wires.size() > 4)
            throw std::invalid_argument("reduced_density: tableau path limited to 4 wires");
        auto gens = t->local_subgroup(local);
        const std::uint32_t p = field_.p();
        std::size_t k = wires.size(), dim = 1;
        for (std::size_t i = 0; i < k; ++i) dim *= p;
        std::vector<Amp> rho(dim * dim, Amp{0, 0});
        std::vector<PauliOperator> elems{PauliOperator::identity(k)};
        for (const auto& g : gens) {
            std::vector<PauliOperator> next;
            next.reserve(elems.size() * p);
            for (const auto& e : elems)
                for (Fel c = 0; c < p; ++c)
                    next.push_back(pauli_mul(field_, e, pauli_pow(field_, g, c)));
            elems = std::move(next);
        }
        for (const auto& e : elems) {
            // matrix of omega^phase X^x Z^z: entry (v + x, v) = omega^{phase + z.v}
            for (std::size_t v = 0; v < dim; ++v) {
                std::size_t row = 0, t2 = v;
                Fel ph = e.phase;
                std::size_t mult = 1;
                for (std::size_t wi = 0; wi < k; ++wi) {
                    Fel dv = static_cast<Fel>(t2 % p);
                    t2 /= p;
                    ph = field_.add(ph, field_.mul(e.z[wi], dv));
                    row += static_cast<std::size_t>(field_.add(dv, e.x[wi])) * mult;
                    mult *= p;
                }
                double ang = 2.0 * 3.14159265358979323846 * ph / p;
                rho[row * dim + v] += Amp{std::cos(ang), std::sin(ang)};
            }
        }
        for (auto& x : rho) x /= static_cast<double>(dim);
        return rho;
    }
    if (auto* s = std::get_if<SparseState>(&r.state)) return s->reduced_density(local);
    return std::get<DenseState>(r.state).reduced_density(local);
}

std::vector<PauliOperator> QuantumEngine::local_subgroup(const std::vector<WireId>& wires) const {
    std::size_t reg = reg_of(wires[0]);
    for (auto w : wires)
        if (reg_of(w) != reg) {
            // wires spread over registers: combine by absorbing on a copy
            QuantumEngine copy = *this;
            std::size_t r = copy.merge(wires);
            std::vector<std::uint32_t> local(wires.size());
            for (std::size_t i = 0; i < wires.size(); ++i) local[i] = copy.local_of(wires[i]);
            return std::get<StabilizerTableau>(copy.regs_[r].state).local_subgroup(local);
        }
    std::vector<std::uint32_t> local(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) local[i] = local_of(wires[i]);
    return std::get<StabilizerTableau>(regs_[reg].state).local_subgroup(local);
}

bool QuantumEngine::register_is_tableau(WireId w) const {
    return std::holds_alternative<StabilizerTableau>(regs_[reg_of(w)].state);
}

std::size_t QuantumEngine::register_size(WireId w) const { return regs_[reg_of(w)].wires.size(); }

std::vector<WireId> QuantumEngine::register_wires(WireId w) const { return regs_[reg_of(w)].wires; }

bool QuantumEngine::wire_alive(WireId w) const {
    return w < where_.size() && where_[w].first != SIZE_MAX;
}

void QuantumEngine::convert_to_sparse(WireId w) { to_sparse(reg_of(w)); }

std::size_t QuantumEngine::live_wires() const {
    std::size_t n = 0;
    for (const auto& r : regs_) n += r.wires.size();
    return n;
}

}  // namespace qpsim
