#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "qpsim/gate.hpp"
#include "qpsim/pauli.hpp"

namespace qpsim {

/// How a freshly allocated wire starts out.
enum class WireInit { Zero, UniformSum };

/// Pure qupit stabilizer state over Z_p: m stabilizer generators plus m
/// destabilizers with <g_i, d_j> = delta_ij. Handles every Clifford gate,
/// Pauli application, and generalized Pauli measurement exactly; phases are
/// exponents of omega = exp(2*pi*i/p).
class StabilizerTableau {
public:
    StabilizerTableau(PrimeField f, const std::vector<WireInit>& wires);

    const PrimeField& field() const { return field_; }
    std::size_t num_wires() const { return m_; }

    void apply_gate(const GateOp& g);
    void apply_pauli(const PauliOperator& p);

    struct MeasureResult {
        Fel outcome;        // eigenvalue exponent: P |psi> = omega^outcome |psi>
        bool deterministic;
    };

    /// Measure the observable P (any Pauli). `forced` overrides the sampled
    /// branch for nondeterministic outcomes; forcing a deterministic
    /// measurement to a different value is an error.
    MeasureResult measure_pauli(const PauliOperator& p, std::mt19937_64& rng,
                                std::optional<Fel> forced = {});

    /// Computational-basis measurement of one wire.
    MeasureResult measure_wire(std::uint32_t wire, std::mt19937_64& rng,
                               std::optional<Fel> forced = {});

    /// Is omega^{p.phase} X^{p.x} Z^{p.z} an element of the stabilizer
    /// group? If the vector part is in the group but the phase differs,
    /// returns the phase the group assigns via `group_phase`.
    bool contains(const PauliOperator& p, Fel* group_phase = nullptr) const;

    /// Remove a wire known to hold a deterministic computational value
    /// (e.g. right after measuring it). Returns that value.
    Fel detach_wire(std::uint32_t wire);

    /// Generators of the subgroup supported entirely on `wires`, reindexed
    /// to those wires and brought to a canonical (RREF) form, phases
    /// included. Two states have equal reduced density matrices on `wires`
    /// iff these lists are equal.
    std::vector<PauliOperator> local_subgroup(const std::vector<std::uint32_t>& wires) const;

    /// Tensor with another tableau (its wires are appended after ours).
    void absorb(const StabilizerTableau& other);

    const PauliOperator& stabilizer(std::size_t i) const { return stab_[i]; }
    const PauliOperator& destabilizer(std::size_t i) const { return destab_[i]; }

    /// Debug invariant: commuting independent stabilizers, correct pairing.
    bool validate() const;

private:
    void row_mul(PauliOperator& row, const PauliOperator& src, Fel power);
    std::optional<std::vector<Fel>> decompose(const PauliOperator& p, Fel* phase_out) const;

    PrimeField field_;
    std::size_t m_;
    std::vector<PauliOperator> stab_;
    std::vector<PauliOperator> destab_;
};

}  // namespace qpsim
