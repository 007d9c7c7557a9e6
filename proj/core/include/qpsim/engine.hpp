#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qpsim/linear.hpp"
#include "qpsim/state.hpp"

namespace qpsim {

enum class BackendKind { Auto, Tableau, Sparse, Dense };

struct EngineConfig {
    BackendKind backend = BackendKind::Auto;
    std::size_t support_cap = 1'000'000;
};

/// Global wire handle; stable across the life of a run.
using WireId = std::uint64_t;

/// Owns the full simulation as a set of registers, each holding a
/// QuantumState over its wires. Registers merge lazily when a gate spans
/// them, so independent subsystems never pay for each other. In Auto mode
/// registers start as tableaus and convert to sparse on the first
/// non-Clifford gate.
class QuantumEngine {
public:
    explicit QuantumEngine(PrimeField f, EngineConfig cfg = {});

    const PrimeField& field() const { return field_; }
    const EngineConfig& config() const { return cfg_; }

    std::vector<WireId> alloc(const std::vector<WireInit>& inits);
    WireId alloc_one(WireInit init);

    void apply(GateKind kind, const std::vector<WireId>& wires, Fel scalar = 1);
    void apply_pauli(const std::vector<WireId>& wires, const PauliOperator& p);
    void apply_linear(const Matrix& m, const std::vector<WireId>& wires);

    Fel measure(WireId w, std::mt19937_64& rng, std::optional<Fel> forced = {});
    /// Measure and remove the wire from its register.
    Fel measure_drop(WireId w, std::mt19937_64& rng, std::optional<Fel> forced = {});

    /// Measure the Pauli observable over the given wires; returns the
    /// eigenvalue exponent.
    Fel measure_pauli(const std::vector<WireId>& wires, const PauliOperator& p,
                      std::mt19937_64& rng, std::optional<Fel> forced = {});

    /// Would measuring this Pauli yield omega^0 with certainty? Exact group
    /// membership on tableaus, numeric stabilizer deviation elsewhere.
    bool syndrome_is_zero(const std::vector<WireId>& wires, const PauliOperator& p) const;

    /// SUM^c from control wires to target wires followed by measurement of
    /// every target. On sparse registers this runs as one fused step so the
    /// pre-measurement product support is never materialized.
    std::vector<Fel> sum_measure(const std::vector<WireId>& targets,
                                 const std::vector<WireId>& controls, Fel coeff,
                                 std::mt19937_64& rng);

    /// Drop a wire in a deterministic computational state; returns its value.
    Fel drop_deterministic(WireId w);
    /// Drop a wire known to be disentangled in an X-basis state (applies an
    /// inverse Fourier first).
    void drop_uniform(WireId w);

    /// Pure state over exactly these wires, in this order. The register
    /// holding them must contain no other wires.
    SparseState pure_state_on(const std::vector<WireId>& wires);

    /// Reduced density matrix on a few wires (row-major, dim p^k).
    std::vector<Amp> reduced_density(const std::vector<WireId>& wires);

    /// Canonical local stabilizer subgroup on the wires (tableau registers
    /// only); equal lists mean equal reduced states.
    std::vector<PauliOperator> local_subgroup(const std::vector<WireId>& wires) const;
    bool register_is_tableau(WireId w) const;

    /// Number of live wires in the register holding w.
    std::size_t register_size(WireId w) const;

    /// All wires in the register holding w.
    std::vector<WireId> register_wires(WireId w) const;

    bool wire_alive(WireId w) const;

    void convert_to_sparse(WireId w);

    std::size_t live_wires() const;

private:
    struct Register {
        QuantumState state;
        std::vector<WireId> wires;
    };

    std::size_t reg_of(WireId w) const;
    std::uint32_t local_of(WireId w) const;
    std::size_t merge(const std::vector<WireId>& wires);
    void to_sparse(std::size_t reg);
    QuantumState make_state(const std::vector<WireInit>& inits) const;
    void drop_local(std::size_t reg, std::uint32_t local);

    PrimeField field_;
    EngineConfig cfg_;
    std::vector<Register> regs_;
    // wire id -> (register, local index)
    std::vector<std::pair<std::size_t, std::uint32_t>> where_;
};

}  // namespace qpsim
