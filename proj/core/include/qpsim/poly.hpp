#pragma once

#include <stdexcept>
#include <vector>

#include "qpsim/field.hpp"

namespace qpsim {

/// Univariate polynomial over Z_p, coefficients lowest degree first.
/// The zero polynomial is an empty coefficient vector.
struct Poly {
    std::vector<Fel> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    bool is_zero() const { return coeffs.empty(); }

    static Poly from_coeffs(const PrimeField& f, std::vector<Fel> c) {
        for (auto& x : c) x %= f.p();
        while (!c.empty() && c.back() == 0) c.pop_back();
        return Poly{std::move(c)};
    }

    Fel eval(const PrimeField& f, Fel x) const {
        Fel acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = f.add(f.mul(acc, x), *it);
        return acc;
    }
};

/// Value of the unique interpolating polynomial through (xs[i], ys[i]) at x0.
/// The xs must be pairwise distinct.
inline Fel lagrange_at(const PrimeField& f, const std::vector<Fel>& xs,
                       const std::vector<Fel>& ys, Fel x0) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("lagrange_at: bad point set");
    Fel acc = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Fel num = 1, den = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            num = f.mul(num, f.sub(x0, xs[j]));
            den = f.mul(den, f.sub(xs[i], xs[j]));
        }
        acc = f.add(acc, f.mul(ys[i], f.mul(num, f.inv(den))));
    }
    return acc;
}

/// Coefficients of the unique degree < xs.size() interpolating polynomial.
inline Poly lagrange_coeffs(const PrimeField& f, const std::vector<Fel>& xs,
                            const std::vector<Fel>& ys) {
    const std::size_t k = xs.size();
    if (ys.size() != k || k == 0) throw std::invalid_argument("lagrange_coeffs: bad point set");
    std::vector<Fel> acc(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        // basis_i(x) = prod_{j!=i} (x - xs[j]) / (xs[i] - xs[j])
        std::vector<Fel> basis{1};
        Fel den = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            std::vector<Fel> next(basis.size() + 1, 0);
            for (std::size_t d = 0; d < basis.size(); ++d) {
                next[d + 1] = f.add(next[d + 1], basis[d]);
                next[d] = f.add(next[d], f.mul(basis[d], f.neg(xs[j])));
            }
            basis = std::move(next);
            den = f.mul(den, f.sub(xs[i], xs[j]));
        }
        Fel scale = f.mul(ys[i], f.inv(den));
        for (std::size_t d = 0; d < basis.size(); ++d)
            acc[d] = f.add(acc[d], f.mul(basis[d], scale));
    }
    return Poly::from_coeffs(f, std::move(acc));
}

}  // namespace qpsim
