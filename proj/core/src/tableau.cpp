#include "qpsim/tableau.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpsim {

StabilizerTableau::StabilizerTableau(PrimeField f, const std::vector<WireInit>& wires)
    : field_(f), m_(wires.size()) {
    stab_.reserve(m_);
    destab_.reserve(m_);
    for (std::size_t w = 0; w < m_; ++w) {
        if (wires[w] == WireInit::Zero) {
            stab_.push_back(PauliOperator::single(m_, w, 0, 1));    // Z_w
            destab_.push_back(PauliOperator::single(m_, w, 1, 0));  // X_w
        } else {
            stab_.push_back(PauliOperator::single(m_, w, 1, 0));             // X_w
            destab_.push_back(PauliOperator::single(m_, w, 0, f.p() - 1));   // Z_w^{-1}
        }
    }
}

void StabilizerTableau::apply_gate(const GateOp& g) {
    g.validate(m_, field_);
    for (auto& row : stab_) conjugate_by_gate(field_, row, g);
    for (auto& row : destab_) conjugate_by_gate(field_, row, g);
}

void StabilizerTableau::apply_pauli(const PauliOperator& p) {
    // conjugation by a Pauli only shifts phases
    for (auto& row : stab_) row.phase = field_.add(row.phase, symplectic(field_, p, row));
    for (auto& row : destab_) row.phase = field_.add(row.phase, symplectic(field_, p, row));
}

void StabilizerTableau::row_mul(PauliOperator& row, const PauliOperator& src, Fel power) {
    if (power == 0) return;
    row = pauli_mul(field_, row, pauli_pow(field_, src, power));
}

std::optional<std::vector<Fel>> StabilizerTableau::decompose(const PauliOperator& p,
                                                             Fel* phase_out) const {
    // p commutes with the whole group, so p = omega^c * prod g_i^{lambda_i}
    // with lambda_i = <p, d_i>.
    std::vector<Fel> lambda(m_);
    for (std::size_t i = 0; i < m_; ++i) lambda[i] = symplectic(field_, p, destab_[i]);
    PauliOperator acc = PauliOperator::identity(m_);
    for (std::size_t i = 0; i < m_; ++i)
        if (lambda[i] != 0) acc = pauli_mul(field_, acc, pauli_pow(field_, stab_[i], lambda[i]));
    for (std::size_t w = 0; w < m_; ++w)
        if (acc.x[w] != p.x[w] || acc.z[w] != p.z[w]) return std::nullopt;
    if (phase_out) *phase_out = acc.phase;
    return lambda;
}

StabilizerTableau::MeasureResult StabilizerTableau::measure_pauli(const PauliOperator& p,
                                                                  std::mt19937_64& rng,
                                                                  std::optional<Fel> forced) {
    const Fel pm = field_.p();
    std::size_t pivot = m_;
    Fel pivot_c = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        Fel c = symplectic(field_, p, stab_[i]);
        if (c != 0) {
            pivot = i;
            pivot_c = c;
            break;
        }
    }

    if (pivot == m_) {
        Fel group_phase = 0;
        auto lambda = decompose(p, &group_phase);
        if (!lambda) throw std::logic_error("tableau: commuting Pauli outside maximal group");
        Fel outcome = field_.sub(p.phase, group_phase);
        if (forced && *forced != outcome)
            throw std::logic_error("tableau: cannot force a deterministic measurement");
        return {outcome, true};
    }

    Fel a = forced ? *forced % pm
                   : static_cast<Fel>(std::uniform_int_distribution<std::uint32_t>(0, pm - 1)(rng));

    Fel inv_c = field_.inv(pivot_c);
    PauliOperator old_pivot = stab_[pivot];
    for (std::size_t i = 0; i < m_; ++i) {
        if (i != pivot) {
            Fel c = symplectic(field_, p, stab_[i]);
            if (c != 0) row_mul(stab_[i], old_pivot, field_.neg(field_.mul(c, inv_c)));
        }
        Fel cd = symplectic(field_, p, destab_[i]);
        if (i != pivot && cd != 0)
            row_mul(destab_[i], old_pivot, field_.neg(field_.mul(cd, inv_c)));
    }
    // new stabilizer omega^{phase-a} X^x Z^z so that P has eigenvalue omega^a
    stab_[pivot] = p;
    stab_[pivot].phase = field_.sub(p.phase, a);
    destab_[pivot] = pauli_pow(field_, old_pivot, inv_c);
    return {a, false};
}

StabilizerTableau::MeasureResult StabilizerTableau::measure_wire(std::uint32_t wire,
                                                                 std::mt19937_64& rng,
                                                                 std::optional<Fel> forced) {
    return measure_pauli(PauliOperator::single(m_, wire, 0, 1), rng, forced);
}

bool StabilizerTableau::contains(const PauliOperator& p, Fel* group_phase) const {
    for (std::size_t i = 0; i < m_; ++i)
        if (symplectic(field_, p, stab_[i]) != 0) return false;
    Fel ph = 0;
    auto lambda = decompose(p, &ph);
    if (!lambda) return false;
    if (group_phase) *group_phase = ph;
    return ph == p.phase;
}

Fel StabilizerTableau::detach_wire(std::uint32_t wire) {
    // Find omega^gamma Z_wire in the group.
    PauliOperator zw = PauliOperator::single(m_, wire, 0, 1);
    for (std::size_t i = 0; i < m_; ++i)
        if (symplectic(field_, zw, stab_[i]) != 0)
            throw std::logic_error("detach_wire: wire value is not deterministic");
    Fel gamma = 0;
    auto lambda_opt = decompose(zw, &gamma);
    if (!lambda_opt) throw std::logic_error("detach_wire: Z_w not in group");
    auto& lambda = *lambda_opt;

    std::size_t pivot = m_;
    for (std::size_t i = 0; i < m_; ++i)
        if (lambda[i] != 0) {
            pivot = i;
            break;
        }
    if (pivot == m_) throw std::logic_error("detach_wire: degenerate decomposition");

    // Basis change: make omega^{gamma} Z_wire an explicit generator.
    PauliOperator combo = PauliOperator::identity(m_);
    for (std::size_t i = 0; i < m_; ++i)
        if (lambda[i] != 0) combo = pauli_mul(field_, combo, pauli_pow(field_, stab_[i], lambda[i]));
    Fel inv_lp = field_.inv(lambda[pivot]);
    PauliOperator old_destab_pivot = destab_[pivot];
    for (std::size_t i = 0; i < m_; ++i) {
        if (i == pivot) continue;
        if (lambda[i] != 0)
            destab_[i] = pauli_mul(field_, destab_[i],
                                   pauli_pow(field_, old_destab_pivot,
                                             field_.neg(field_.mul(lambda[i], inv_lp))));
    }
    destab_[pivot] = pauli_pow(field_, old_destab_pivot, inv_lp);
    stab_[pivot] = combo;  // = omega^gamma Z_wire

    // Clear z on the dropped wire from every other row.
    for (std::size_t i = 0; i < m_; ++i) {
        if (i != pivot && stab_[i].z[wire] != 0)
            row_mul(stab_[i], stab_[pivot], field_.neg(stab_[i].z[wire]));
        if (i != pivot && destab_[i].z[wire] != 0)
            row_mul(destab_[i], stab_[pivot], field_.neg(destab_[i].z[wire]));
    }

    // Delete the generator pair and the wire column.
    stab_.erase(stab_.begin() + static_cast<std::ptrdiff_t>(pivot));
    destab_.erase(destab_.begin() + static_cast<std::ptrdiff_t>(pivot));
    for (auto* rows : {&stab_, &destab_}) {
        for (auto& row : *rows) {
            row.x.erase(row.x.begin() + wire);
            row.z.erase(row.z.begin() + wire);
        }
    }
    --m_;
    return field_.neg(gamma);  // Z_w eigenvalue omega^{-gamma} <-> value -gamma
}

std::vector<PauliOperator> StabilizerTableau::local_subgroup(
    const std::vector<std::uint32_t>& wires) const {
    std::vector<bool> keep(m_, false);
    for (auto w : wires) keep[w] = true;

    // Gauss-Jordan on the complement coordinates: rows left without a pivot
    // end up supported entirely on `wires`.
    std::vector<PauliOperator> rows = stab_;

    std::vector<std::pair<bool, std::uint32_t>> comp_coords;  // (is_z, wire)
    for (std::uint32_t w = 0; w < m_; ++w)
        if (!keep[w]) {
            comp_coords.push_back({false, w});
            comp_coords.push_back({true, w});
        }

    std::size_t row_at = 0;
    for (auto [is_z, w] : comp_coords) {
        auto coord = [&](const PauliOperator& r) { return is_z ? r.z[w] : r.x[w]; };
        std::size_t piv = row_at;
        while (piv < rows.size() && coord(rows[piv]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[row_at], rows[piv]);
        Fel inv = field_.inv(coord(rows[row_at]));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == row_at) continue;
            Fel c = coord(rows[i]);
            if (c == 0) continue;
            Fel k = field_.neg(field_.mul(c, inv));
            rows[i] = pauli_mul(field_, rows[i], pauli_pow(field_, rows[row_at], k));
        }
        ++row_at;
    }

    // Rows past row_at are supported on `wires`; reindex and canonicalize.
    std::vector<PauliOperator> local;
    for (std::size_t i = row_at; i < rows.size(); ++i) {
        PauliOperator q = PauliOperator::identity(wires.size());
        q.phase = rows[i].phase;
        for (std::size_t j = 0; j < wires.size(); ++j) {
            q.x[j] = rows[i].x[wires[j]];
            q.z[j] = rows[i].z[wires[j]];
        }
        local.push_back(std::move(q));
    }

    // RREF over the (x|z) coordinates for a canonical generator list.
    std::size_t at = 0;
    const std::size_t k = wires.size();
    for (std::size_t col = 0; col < 2 * k && at < local.size(); ++col) {
        auto coord = [&](const PauliOperator& q) { return col < k ? q.x[col] : q.z[col - k]; };
        std::size_t piv = at;
        while (piv < local.size() && coord(local[piv]) == 0) ++piv;
        if (piv == local.size()) continue;
        std::swap(local[at], local[piv]);
        local[at] = pauli_pow(field_, local[at], field_.inv(coord(local[at])));
        for (std::size_t i = 0; i < local.size(); ++i) {
            if (i == at) continue;
            Fel c = coord(local[i]);
            if (c != 0)
                local[i] = pauli_mul(field_, local[i], pauli_pow(field_, local[at], field_.neg(c)));
        }
        ++at;
    }
    local.resize(at);  // drop identity rows
    return local;
}

void StabilizerTableau::absorb(const StabilizerTableau& other) {
    if (!(field_ == other.field_)) throw std::invalid_argument("absorb: field mismatch");
    const std::size_t total = m_ + other.m_;
    auto extend = [&](std::vector<PauliOperator>& rows, std::size_t offset) {
        for (auto& row : rows) {
            std::vector<Fel> nx(total, 0), nz(total, 0);
            for (std::size_t w = 0; w < row.x.size(); ++w) {
                nx[offset + w] = row.x[w];
                nz[offset + w] = row.z[w];
            }
            row.x = std::move(nx);
            row.z = std::move(nz);
        }
    };
    extend(stab_, 0);
    extend(destab_, 0);
    std::vector<PauliOperator> ostab = other.stab_, odestab = other.destab_;
    extend(ostab, m_);
    extend(odestab, m_);
    stab_.insert(stab_.end(), ostab.begin(), ostab.end());
    destab_.insert(destab_.end(), odestab.begin(), odestab.end());
    m_ = total;
}

bool StabilizerTableau::validate() const {
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < m_; ++j) {
            if (symplectic(field_, stab_[i], stab_[j]) != 0) return false;
            Fel want = (i == j) ? 1u : 0u;
            if (symplectic(field_, stab_[i], destab_[j]) != want) return false;
        }
    }
    return true;
}

}  // namespace qpsim
