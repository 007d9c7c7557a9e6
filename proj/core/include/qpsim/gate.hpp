#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "qpsim/field.hpp"

namespace qpsim {

/// The universal gate set on qupits. Sum carries an exponent so the
/// controlled shift (x,y) -> (x, y+cx) is a single op.
enum class GateKind { Shift, Sum, ScalarMul, PhaseShift, Fourier, FourierInverse, Toffoli };

struct GateOp {
    GateKind kind;
    std::array<std::uint32_t, 3> wires{};  // first `arity()` entries valid
    Fel scalar = 1;                        // shift/sum amount, scale factor, or Fourier r

    static GateOp shift(std::uint32_t w, Fel c) { return {GateKind::Shift, {w}, c}; }
    static GateOp sum(std::uint32_t control, std::uint32_t target, Fel c = 1) {
        return {GateKind::Sum, {control, target}, c};
    }
    static GateOp scalar_mul(std::uint32_t w, Fel c) { return {GateKind::ScalarMul, {w}, c}; }
    static GateOp phase_shift(std::uint32_t w, Fel c) { return {GateKind::PhaseShift, {w}, c}; }
    static GateOp fourier(std::uint32_t w, Fel r = 1) { return {GateKind::Fourier, {w}, r}; }
    static GateOp fourier_inv(std::uint32_t w, Fel r = 1) {
        return {GateKind::FourierInverse, {w}, r};
    }
    static GateOp toffoli(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        return {GateKind::Toffoli, {a, b, c}, 1};
    }

    std::size_t arity() const {
        switch (kind) {
            case GateKind::Sum: return 2;
            case GateKind::Toffoli: return 3;
            default: return 1;
        }
    }

    bool is_clifford() const { return kind != GateKind::Toffoli; }

    void validate(std::size_t num_wires, const PrimeField& f) const {
        for (std::size_t i = 0; i < arity(); ++i) {
            if (wires[i] >= num_wires) throw std::invalid_argument("GateOp: wire out of range");
            for (std::size_t j = i + 1; j < arity(); ++j)
                if (wires[i] == wires[j]) throw std::invalid_argument("GateOp: repeated wire");
        }
        if ((kind == GateKind::ScalarMul || kind == GateKind::Fourier ||
             kind == GateKind::FourierInverse) &&
            scalar % f.p() == 0)
            throw std::invalid_argument("GateOp: scalar must be nonzero");
    }
};

}  // namespace qpsim
