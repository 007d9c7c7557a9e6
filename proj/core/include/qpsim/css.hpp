#pragma once

#include <optional>
#include <set>
#include <vector>

#include "qpsim/engine.hpp"
#include "qpsim/rs_code.hpp"

namespace qpsim {

/// Quantum polynomial code with parameter delta: computational-basis words
/// lie in V (degree <= delta evaluations), Fourier-basis words in W (the
/// rescaled degree-delta' family), delta' = n - delta - 1. Corrects
/// t = floor(delta/2) errors.
struct CssCode {
    PrimeField f;
    std::size_t n;
    std::size_t delta;

    CssCode(PrimeField f_, std::size_t n_, std::size_t delta_)
        : f(f_), n(n_), delta(delta_),
          V(f_, n_, delta_, RsVariant::V),
          W(f_, n_, n_ - delta_ - 1, RsVariant::W) {}

    ReedSolomonCode V;
    ReedSolomonCode W;

    std::size_t delta_prime() const { return n - delta - 1; }
    std::size_t t() const { return delta / 2; }

    /// The code reached by a transversal Fourier: parameters swap.
    CssCode dual() const { return CssCode(f, n, delta_prime()); }

    bool operator==(const CssCode& o) const {
        return f == o.f && n == o.n && delta == o.delta;
    }
};

/// n wires holding one encoded logical qupit; wires[i] carries q(i+1).
struct CodeBlock {
    std::vector<WireId> wires;
    CssCode code;
};

/// Encode the qupit on `input` into a fresh n-wire block: the coefficient
/// register (s, r_1..r_delta, 0,...,0) is pushed through the Vandermonde
/// map, with the randomness slots in uniform superposition.
CodeBlock encode(QuantumEngine& eng, const CssCode& code, WireId input);

/// Test-only variant with sampled classical randomness.
CodeBlock encode_classical(QuantumEngine& eng, const CssCode& code, WireId input,
                           const std::vector<Fel>& randomness);

struct DecodeDOutcome {
    bool ok = false;
    WireId logical = 0;
    // identified error: X exponents and Z exponents per position
    std::vector<Fel> x_error;
    std::vector<Fel> z_error;
};

/// The real decoder: both-basis syndrome measurement, Pauli correction,
/// inverse encoding. Identifies errors of weight <= t; wider corruption
/// reports ok = false and the caller picks the fallback.
DecodeDOutcome decode_D(QuantumEngine& eng, const CodeBlock& block, std::mt19937_64& rng);

/// Erasure-recovery interpolation over `chosen` (delta+1 positions,
/// 1-based) plus the clearing sums that leave the logical qupit
/// disentangled. Touches only chosen positions and positions outside
/// `untouched`; positions in `untouched` (at most delta of them) are never
/// acted on. Returns the logical wire.
WireId ideal_recover(QuantumEngine& eng, const CodeBlock& block,
                     const std::set<std::size_t>& chosen,
                     const std::set<std::size_t>& untouched);

/// Convenience: first delta+1 positions outside B as chosen, B untouched.
WireId ideal_recover(QuantumEngine& eng, const CodeBlock& block, const std::set<std::size_t>& B);

/// Componentwise logical gates. Fourier retags the block to the dual code
/// (the per-wire rescale by the dual constants is part of the op).
void transversal_shift(QuantumEngine& eng, CodeBlock& block, Fel c);
void transversal_scalar_mul(QuantumEngine& eng, CodeBlock& block, Fel c);
void transversal_phase_shift(QuantumEngine& eng, CodeBlock& block, Fel c);
void transversal_sum(QuantumEngine& eng, const CodeBlock& control, CodeBlock& target, Fel c = 1);
void transversal_fourier(QuantumEngine& eng, CodeBlock& block, bool inverse = false);
/// Wire-wise Toffoli; the product lands on `target`, which is retagged to
/// the dual code (degree doubles). Requires n >= 3*delta + 1.
void transversal_toffoli(QuantumEngine& eng, const CodeBlock& a, const CodeBlock& b,
                         CodeBlock& target);

/// Measure every wire, classically decode the word, return q(0).
std::optional<Fel> logical_measure(QuantumEngine& eng, const CodeBlock& block,
                                   std::mt19937_64& rng);

struct DegreeReduceResult {
    CodeBlock block;          // the ancilla wires, now carrying the data
    Word measured;            // the broadcast word
    Fel decoded_b = 0;
};

/// Map a block encoded with the dual (delta') code back to the base code
/// using an ancilla block encoding the uniform superposition: transversal
/// SUM onto the data, measure the data, decode b, apply X^b S_{-1} to the
/// ancilla. The measurement word is exposed so protocol callers can route
/// it through broadcast; `decode_override` substitutes the b obtained that
/// way.
std::optional<DegreeReduceResult> degree_reduce(QuantumEngine& eng, const CodeBlock& data,
                                                const CodeBlock& ancilla, std::mt19937_64& rng,
                                                std::optional<Fel> decode_override = {});

/// Correction step of degree reduction, usable on its own by protocol code.
void degree_reduce_correct(QuantumEngine& eng, CodeBlock& ancilla, Fel b);

/// Both-basis syndrome membership restricted to the complement of B:
/// the state passes the V_B checks in the computational basis and the W_B
/// checks in the Fourier basis.
bool cb_member(QuantumEngine& eng, const CodeBlock& block, const std::set<std::size_t>& B);

/// Check operators whose joint +1 eigenspace is the B-neighborhood.
std::vector<PauliOperator> cb_check_operators(const CssCode& code,
                                              const std::set<std::size_t>& B);

}  // namespace qpsim
