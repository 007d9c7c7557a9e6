#pragma once

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "qpsim/gate.hpp"
#include "qpsim/pauli.hpp"
#include "qpsim/sparse_state.hpp"
#include "qpsim/tableau.hpp"

namespace qpsim {

/// Full state vector over p^m amplitudes; the cross-validation oracle.
/// Wire w is the base-p digit of weight p^w in the index.
class DenseState {
public:
    static constexpr std::size_t kMaxDim = 20'000'000;

    DenseState(PrimeField f, const std::vector<WireInit>& wires);

    const PrimeField& field() const { return field_; }
    std::size_t num_wires() const { return m_; }
    std::size_t dim() const { return amp_.size(); }

    void apply_gate(const GateOp& g);
    void apply_pauli(const PauliOperator& p);

    /// Apply an arbitrary unitary on the given wires (row-major matrix of
    /// dimension p^{wires.size()}).
    void apply_unitary(const std::vector<std::uint32_t>& wires, const std::vector<Amp>& matrix);

    Fel measure_wire(std::uint32_t wire, std::mt19937_64& rng, std::optional<Fel> forced = {});

    std::vector<double> wire_distribution(std::uint32_t wire) const;
    std::vector<double> full_distribution() const;

    Amp inner_product(const DenseState& other) const;
    std::vector<Amp> reduced_density(const std::vector<std::uint32_t>& wires) const;

    Amp& at(std::size_t i) { return amp_[i]; }
    const Amp& at(std::size_t i) const { return amp_[i]; }

    /// Expectation-style check that the Pauli stabilizes this state:
    /// max |(P|psi>)_i - |psi>_i|.
    double stabilizer_deviation(const PauliOperator& p) const;

    static DenseState from_sparse(const SparseState& s);
    SparseState to_sparse(std::size_t support_cap, double threshold = 1e-12) const;

private:
    Fel digit(std::size_t idx, std::uint32_t wire) const { return (idx / stride_[wire]) % field_.p(); }

    PrimeField field_;
    std::uint32_t m_;
    std::vector<std::size_t> stride_;
    std::vector<Amp> amp_;
};

}  // namespace qpsim
