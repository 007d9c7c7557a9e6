#pragma once

#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "qpsim/dense_state.hpp"
#include "qpsim/gate.hpp"
#include "qpsim/pauli.hpp"
#include "qpsim/sparse_state.hpp"
#include "qpsim/tableau.hpp"

namespace qpsim {

/// Tagged union over the three backends. The tableau handles Clifford
/// circuits on large systems, the sparse map handles arbitrary gates on
/// small-support states, dense is the oracle.
using QuantumState = std::variant<StabilizerTableau, SparseState, DenseState>;

void apply_gate(QuantumState& s, const GateOp& g, std::mt19937_64* rng = nullptr);
void apply_pauli(QuantumState& s, const PauliOperator& p);
Fel measure_computational(QuantumState& s, std::uint32_t wire, std::mt19937_64& rng,
                          std::optional<Fel> forced = {});
Fel measure_fourier(QuantumState& s, std::uint32_t wire, std::mt19937_64& rng,
                    std::optional<Fel> forced = {});
std::size_t state_num_wires(const QuantumState& s);
const PrimeField& state_field(const QuantumState& s);

/// Max deviation between the dense oracle and the other applicable
/// backends after running `circuit` from the given initial wires:
/// full-outcome-distribution distance for sparse, distribution distance
/// plus stabilizer-membership deviation for the tableau.
double dense_oracle_compare(const PrimeField& f, const std::vector<WireInit>& wires,
                            const std::vector<GateOp>& circuit);

}  // namespace qpsim
