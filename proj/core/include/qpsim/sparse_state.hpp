#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "qpsim/errors.hpp"
#include "qpsim/gate.hpp"
#include "qpsim/pauli.hpp"
#include "qpsim/tableau.hpp"

namespace qpsim {

using Amp = std::complex<double>;

/// Packed basis string: 4 bits per wire, up to 48 wires. Sparse states are
/// only used at desk scale, so p <= 13 fits.
struct BasisKey {
    std::array<std::uint64_t, 3> v{0, 0, 0};

    Fel get(std::uint32_t w) const { return static_cast<Fel>((v[w >> 4] >> ((w & 15) * 4)) & 0xF); }
    void set(std::uint32_t w, Fel val) {
        auto& word = v[w >> 4];
        word = (word & ~(0xFULL << ((w & 15) * 4))) | (std::uint64_t(val & 0xF) << ((w & 15) * 4));
    }
    bool operator==(const BasisKey& o) const { return v == o.v; }

    /// Key with wire w removed and higher wires shifted down.
    BasisKey without(std::uint32_t w, std::uint32_t m) const {
        BasisKey out;
        std::uint32_t at = 0;
        for (std::uint32_t i = 0; i < m; ++i)
            if (i != w) out.set(at++, get(i));
        return out;
    }
};

struct BasisKeyHash {
    std::size_t operator()(const BasisKey& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto word : k.v) {
            h ^= word + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Exact sparse state vector: map from basis strings to complex amplitudes.
/// All gates except Fourier permute basis strings with diagonal phases;
/// Fourier expands each term into p terms and merges.
class SparseState {
public:
    static constexpr std::uint32_t kMaxWires = 48;

    SparseState(PrimeField f, const std::vector<WireInit>& wires,
                std::size_t support_cap = 1'000'000);

    const PrimeField& field() const { return field_; }
    std::size_t num_wires() const { return m_; }
    std::size_t support() const { return amps_.size(); }
    std::size_t support_cap() const { return cap_; }
    void set_support_cap(std::size_t cap) { cap_ = cap; }

    void apply_gate(const GateOp& g);
    void apply_pauli(const PauliOperator& p);

    Fel measure_wire(std::uint32_t wire, std::mt19937_64& rng, std::optional<Fel> forced = {});

    /// Generalized Pauli observable measurement; returns the eigenvalue
    /// exponent a with P |post> = omega^a |post>.
    Fel measure_pauli(const PauliOperator& p, std::mt19937_64& rng,
                      std::optional<Fel> forced = {});

    /// Probability distribution of measuring `wire`.
    std::vector<double> wire_distribution(std::uint32_t wire) const;

    double total_probability() const;
    void renormalize();
    void prune(double threshold = 1e-12);

    Amp amplitude(const BasisKey& k) const;
    Amp inner_product(const SparseState& other) const;

    /// Reduced density matrix on a few wires (row-major, dim p^{|wires|}).
    std::vector<Amp> reduced_density(const std::vector<std::uint32_t>& wires) const;

    /// Drop a wire whose value is the same in every basis string.
    Fel detach_wire(std::uint32_t wire);

    void absorb(const SparseState& other);

    /// SUM^c from control wires (in `anc`) onto target wires (in *this)
    /// followed by measurement of every target, without materializing the
    /// merged pre-measurement state. Returns the measured word and leaves
    /// *this as the merged post-measurement state (targets collapsed, anc
    /// wires appended after ours).
    static SparseState sum_measure_merge(SparseState data, const SparseState& anc,
                                         const std::vector<std::uint32_t>& targets,
                                         const std::vector<std::uint32_t>& controls, Fel coeff,
                                         std::mt19937_64& rng, std::vector<Fel>& outcomes_out);

    const std::unordered_map<BasisKey, Amp, BasisKeyHash>& amplitudes() const { return amps_; }

    static SparseState from_tableau(const StabilizerTableau& t, std::size_t support_cap);
    static SparseState from_entries(PrimeField f, std::uint32_t m,
                                    const std::vector<std::pair<BasisKey, Amp>>& entries,
                                    std::size_t support_cap);

private:
    void check_cap(std::size_t next) const;

    PrimeField field_;
    std::uint32_t m_;
    std::size_t cap_;
    std::unordered_map<BasisKey, Amp, BasisKeyHash> amps_;
};

}  // namespace qpsim
