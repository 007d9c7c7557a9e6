#pragma once

#include <optional>
#include <set>
#include <vector>

#include "qpsim/field.hpp"
#include "qpsim/poly.hpp"

namespace qpsim {

/// Length-n vector of field elements; indices are 1-based in protocol
/// language and 0-based in storage.
using Word = std::vector<Fel>;

/// The four classical code families used throughout. V-variants are plain
/// evaluation codes of degree <= delta at points 1..n; W-variants are the
/// same families rescaled coordinatewise by the dual constants d_i.
/// Zero-variants (V0, W0) restrict to polynomials vanishing at 0.
enum class RsVariant { V, V0, W, W0 };

/// d_i = prod_{j != i} j / (j - i), the weights with
/// sum_i d_i q(i) = q(0) for every polynomial of degree <= n-1.
/// Rescaling V0/V of degree n-delta-1 by these constants gives exactly the
/// dual of V/V0 of degree delta.
std::vector<Fel> dual_constants(const PrimeField& f, std::size_t n);

class ReedSolomonCode {
public:
    ReedSolomonCode(PrimeField f, std::size_t n, std::size_t delta, RsVariant variant);

    const PrimeField& field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t delta() const { return delta_; }
    RsVariant variant() const { return variant_; }
    const std::vector<Fel>& scaling() const { return d_; }
    bool is_scaled() const { return variant_ == RsVariant::W || variant_ == RsVariant::W0; }
    bool is_zero_variant() const { return variant_ == RsVariant::V0 || variant_ == RsVariant::W0; }

    /// Errors correctable with `erasures` known-bad positions.
    std::size_t radius(std::size_t erasures = 0) const {
        std::size_t d_min = n_ - delta_;  // minimum distance
        return erasures + 1 >= d_min ? 0 : (d_min - 1 - erasures) / 2;
    }

    std::size_t dimension() const { return is_zero_variant() ? delta_ : delta_ + 1; }

    /// All p^dim codewords, enumerated by coefficient vector. Desk scale only.
    std::vector<Word> enumerate() const;

    bool contains(const Word& w) const;

private:
    PrimeField field_;
    std::size_t n_;
    std::size_t delta_;
    RsVariant variant_;
    std::vector<Fel> d_;
};

/// Codeword (q(1),...,q(n)) for q(0) = secret with the higher coefficients
/// taken from `randomness` (exactly delta of them). Zero-variants force
/// secret = 0.
Word rs_encode(const ReedSolomonCode& code, Fel secret, const std::vector<Fel>& randomness);

struct Decoded {
    Fel secret = 0;
    Word codeword;                       // nearest codeword
    std::set<std::size_t> error_positions;  // 1-based
    std::vector<Fel> error_values;       // word - codeword, aligned with positions
};

/// Minimum-distance decoding within the (erasure-adjusted) correction
/// radius, by trial over error supports. Positions listed in `erasures`
/// are ignored entirely (their error values are reported as the
/// difference from the recovered codeword). Returns nullopt when no
/// codeword lies within the radius.
std::optional<Decoded> rs_decode(const ReedSolomonCode& code, const Word& word,
                                 const std::set<std::size_t>& erasures = {});

/// q(0) via Lagrange interpolation restricted to `positions` (1-based).
/// Needs at least dim points; with more, consistency of the overdetermined
/// system is checked and InconsistentShares thrown on mismatch.
Fel erasure_interpolate(const ReedSolomonCode& code, const Word& word,
                        const std::set<std::size_t>& positions);

/// True iff some codeword agrees with `word` outside B.
bool in_neighborhood(const ReedSolomonCode& code, const Word& word,
                     const std::set<std::size_t>& B);

namespace testing {
/// Fault-injection hook for selftest sensitivity checks: when enabled,
/// rs_decode deliberately mangles the recovered secret.
void set_fault(const std::string& name, bool on);
bool fault_enabled(const std::string& name);
}  // namespace testing

}  // namespace qpsim
