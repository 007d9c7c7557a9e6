#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qpsim {

/// Canonical residue in Z_p, always in [0, p).
using Fel = std::uint32_t;

/// Arithmetic context for the prime field Z_p. Every protocol instance
/// requires p prime and p > n; elements are canonical residues.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus must be prime");
    }

    std::uint32_t p() const { return p_; }

    Fel reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Fel>(r);
    }

    Fel add(Fel a, Fel b) const {
        Fel s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Fel sub(Fel a, Fel b) const { return a >= b ? a - b : a + p_ - b; }
    Fel neg(Fel a) const { return a == 0 ? 0 : p_ - a; }
    Fel mul(Fel a, Fel b) const {
        return static_cast<Fel>(static_cast<std::uint64_t>(a) * b % p_);
    }

    Fel pow(Fel a, std::uint64_t e) const {
        Fel r = 1, base = a % p_;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Fel inv(Fel a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    static bool is_prime(std::uint32_t x) {
        if (x < 2) return false;
        for (std::uint64_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

}  // namespace qpsim
