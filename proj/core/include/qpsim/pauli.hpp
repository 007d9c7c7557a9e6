#pragma once

#include <cstddef>
#include <vector>

#include "qpsim/errors.hpp"
#include "qpsim/field.hpp"
#include "qpsim/gate.hpp"

namespace qpsim {

/// Generalized Pauli omega^phase * prod_w X_w^{x[w]} Z_w^{z[w]} with the
/// X factor left of the Z factor on every wire. Composition follows
/// (X^a Z^b)(X^c Z^d) = omega^{bc} X^{a+c} Z^{b+d} per component.
struct PauliOperator {
    std::vector<Fel> x;
    std::vector<Fel> z;
    Fel phase = 0;

    static PauliOperator identity(std::size_t m) {
        return PauliOperator{std::vector<Fel>(m, 0), std::vector<Fel>(m, 0), 0};
    }
    static PauliOperator single(std::size_t m, std::size_t wire, Fel xe, Fel ze, Fel ph = 0) {
        auto p = identity(m);
        p.x[wire] = xe;
        p.z[wire] = ze;
        p.phase = ph;
        return p;
    }

    std::size_t num_wires() const { return x.size(); }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0 || z[i] != 0) ++w;
        return w;
    }

    bool is_identity_up_to_phase() const {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0 || z[i] != 0) return false;
        return true;
    }
};

/// this * other, collecting the omega phases from moving other's X factors
/// past this's Z factors.
inline PauliOperator pauli_mul(const PrimeField& f, const PauliOperator& a,
                               const PauliOperator& b) {
    PauliOperator r = a;
    r.phase = f.add(a.phase, b.phase);
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        r.phase = f.add(r.phase, f.mul(a.z[i], b.x[i]));
        r.x[i] = f.add(a.x[i], b.x[i]);
        r.z[i] = f.add(a.z[i], b.z[i]);
    }
    return r;
}

/// a^k with exact phase: omega^{k*phase + C(k,2) sum_i x_i z_i}.
inline PauliOperator pauli_pow(const PrimeField& f, const PauliOperator& a, Fel k) {
    PauliOperator r = a;
    Fel cross = 0;
    for (std::size_t i = 0; i < a.x.size(); ++i) cross = f.add(cross, f.mul(a.x[i], a.z[i]));
    Fel binom = f.mul(k, f.sub(k, 1));
    binom = f.mul(binom, f.inv(2));  // p odd
    r.phase = f.add(f.mul(k, a.phase), f.mul(binom, cross));
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        r.x[i] = f.mul(a.x[i], k);
        r.z[i] = f.mul(a.z[i], k);
    }
    return r;
}

/// Symplectic form with a b = omega^{<a,b>} b a.
inline Fel symplectic(const PrimeField& f, const PauliOperator& a, const PauliOperator& b) {
    Fel s = 0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        s = f.add(s, f.mul(a.z[i], b.x[i]));
        s = f.sub(s, f.mul(a.x[i], b.z[i]));
    }
    return s;
}

/// Image of a Pauli under conjugation by a Clifford gate, g P g^{-1}.
inline void conjugate_by_gate(const PrimeField& f, PauliOperator& p, const GateOp& g) {
    switch (g.kind) {
        case GateKind::Shift: {
            // Z -> omega^{-c} Z
            auto w = g.wires[0];
            p.phase = f.sub(p.phase, f.mul(g.scalar, p.z[w]));
            return;
        }
        case GateKind::PhaseShift: {
            // X -> omega^{c} X
            auto w = g.wires[0];
            p.phase = f.add(p.phase, f.mul(g.scalar, p.x[w]));
            return;
        }
        case GateKind::ScalarMul: {
            // X -> X^c, Z -> Z^{1/c}
            auto w = g.wires[0];
            p.x[w] = f.mul(p.x[w], g.scalar);
            p.z[w] = f.mul(p.z[w], f.inv(g.scalar));
            return;
        }
        case GateKind::Fourier: {
            // X -> Z^r, Z -> X^{-1/r}; X^x Z^z -> omega^{-xz} X^{-z/r} Z^{rx}
            auto w = g.wires[0];
            Fel xw = p.x[w], zw = p.z[w];
            p.phase = f.sub(p.phase, f.mul(xw, zw));
            p.x[w] = f.neg(f.mul(zw, f.inv(g.scalar)));
            p.z[w] = f.mul(xw, g.scalar);
            return;
        }
        case GateKind::FourierInverse: {
            // X -> Z^{-r}, Z -> X^{1/r}; X^x Z^z -> omega^{-xz} X^{z/r} Z^{-rx}
            auto w = g.wires[0];
            Fel xw = p.x[w], zw = p.z[w];
            p.phase = f.sub(p.phase, f.mul(xw, zw));
            p.x[w] = f.mul(zw, f.inv(g.scalar));
            p.z[w] = f.neg(f.mul(xw, g.scalar));
            return;
        }
        case GateKind::Sum: {
            // X_c -> X_c X_t^b, Z_t -> Z_c^{-b} Z_t
            auto c = g.wires[0], t = g.wires[1];
            Fel b = g.scalar;
            p.x[t] = f.add(p.x[t], f.mul(b, p.x[c]));
            p.z[c] = f.sub(p.z[c], f.mul(b, p.z[t]));
            return;
        }
        case GateKind::Toffoli:
            throw UnsupportedGate("conjugate_by_gate: Toffoli is not Clifford");
    }
}

}  // namespace qpsim
