#include "qpsim/rs_code.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qpsim/errors.hpp"

namespace qpsim {

namespace {
std::set<std::string>& fault_set() {
    static std::set<std::string> s;
    return s;
}
}  // namespace

namespace testing {
void set_fault(const std::string& name, bool on) {
    if (on)
        fault_set().insert(name);
    else
        fault_set().erase(name);
}
bool fault_enabled(const std::string& name) { return fault_set().count(name) != 0; }
}  // namespace testing

std::vector<Fel> dual_constants(const PrimeField& f, std::size_t n) {
    if (n >= f.p()) throw std::invalid_argument("dual_constants: need p > n");
    std::vector<Fel> d(n);
    for (std::size_t i = 1; i <= n; ++i) {
        Fel num = 1, den = 1;
        for (std::size_t j = 1; j <= n; ++j) {
            if (j == i) continue;
            num = f.mul(num, static_cast<Fel>(j));
            den = f.mul(den, f.sub(static_cast<Fel>(j), static_cast<Fel>(i)));
        }
        d[i - 1] = f.mul(num, f.inv(den));
    }
    return d;
}

ReedSolomonCode::ReedSolomonCode(PrimeField f, std::size_t n, std::size_t delta,
                                 RsVariant variant)
    : field_(f), n_(n), delta_(delta), variant_(variant), d_(dual_constants(f, n)) {
    if (n == 0 || delta >= n) throw std::invalid_argument("ReedSolomonCode: need delta < n");
}

std::vector<Word> ReedSolomonCode::enumerate() const {
    const std::size_t dim = dimension();
    const Fel p = field_.p();
    std::vector<Word> out;
    std::vector<Fel> coeffs(delta_ + 1, 0);
    std::vector<Fel> idx(dim, 0);
    for (;;) {
        // map enumeration index to coefficients (zero-variant skips c0)
        if (is_zero_variant()) {
            coeffs[0] = 0;
            for (std::size_t j = 0; j < dim; ++j) coeffs[j + 1] = idx[j];
        } else {
            for (std::size_t j = 0; j < dim; ++j) coeffs[j] = idx[j];
        }
        Poly q = Poly::from_coeffs(field_, coeffs);
        Word w(n_);
        for (std::size_t i = 1; i <= n_; ++i) {
            Fel v = q.eval(field_, static_cast<Fel>(i));
            w[i - 1] = is_scaled() ? field_.mul(d_[i - 1], v) : v;
        }
        out.push_back(std::move(w));
        std::size_t j = 0;
        while (j < dim && ++idx[j] == p) idx[j++] = 0;
        if (j == dim) break;
    }
    return out;
}

bool ReedSolomonCode::contains(const Word& w) const {
    return in_neighborhood(*this, w, {});
}

Word rs_encode(const ReedSolomonCode& code, Fel secret, const std::vector<Fel>& randomness) {
    if (code.is_scaled())
        throw std::invalid_argument("rs_encode: encode through the V-variants");
    if (code.is_zero_variant() && secret != 0)
        throw std::invalid_argument("rs_encode: zero-variant requires secret = 0");
    if (randomness.size() != code.delta())
        throw std::invalid_argument("rs_encode: need exactly delta randomness elements");
    const PrimeField& f = code.field();
    std::vector<Fel> coeffs;
    coeffs.reserve(code.delta() + 1);
    coeffs.push_back(secret % f.p());
    for (Fel r : randomness) coeffs.push_back(r % f.p());
    Poly q = Poly::from_coeffs(f, coeffs);
    Word w(code.n());
    for (std::size_t i = 1; i <= code.n(); ++i)
        w[i - 1] = q.eval(f, static_cast<Fel>(i));
    return w;
}

namespace {

// Unscale a W-variant word back to the plain evaluation domain.
Word unscale(const ReedSolomonCode& code, const Word& w) {
    if (!code.is_scaled()) return w;
    const PrimeField& f = code.field();
    Word out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = f.mul(w[i], f.inv(code.scaling()[i]));
    return out;
}

// Try to fit a polynomial of degree <= delta (vanishing at 0 for the
// 0-variants) through the word restricted to `keep` (0-based). Returns the
// full evaluation word on success.
std::optional<std::pair<Fel, Word>> fit_on(const ReedSolomonCode& code, const Word& plain,
                                           const std::vector<std::size_t>& keep) {
    const PrimeField& f = code.field();
    std::vector<Fel> xs, ys;
    xs.reserve(keep.size() + 1);
    ys.reserve(keep.size() + 1);
    if (code.is_zero_variant()) {
        xs.push_back(0);
        ys.push_back(0);
    }
    // take up to delta+1 anchor points (including the forced origin)
    for (std::size_t idx : keep) {
        if (xs.size() == code.delta() + 1) break;
        xs.push_back(static_cast<Fel>(idx + 1));
        ys.push_back(plain[idx]);
    }
    Poly q = lagrange_coeffs(f, xs, ys);
    if (!q.is_zero() && q.degree() > code.delta()) return std::nullopt;
    // consistency on all kept points
    for (std::size_t idx : keep)
        if (q.eval(f, static_cast<Fel>(idx + 1)) != plain[idx]) return std::nullopt;
    Word full(code.n());
    for (std::size_t i = 1; i <= code.n(); ++i) full[i - 1] = q.eval(f, static_cast<Fel>(i));
    return std::make_pair(q.eval(f, 0), full);
}

void supports_of_size(std::size_t n, std::size_t k, const std::vector<std::size_t>& from,
                      std::vector<std::size_t>& cur, std::size_t start,
                      std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < from.size(); ++i) {
        cur.push_back(from[i]);
        supports_of_size(n, k, from, cur, i + 1, out);
        cur.pop_back();
    }
}

}  // namespace

std::optional<Decoded> rs_decode(const ReedSolomonCode& code, const Word& word,
                                 const std::set<std::size_t>& erasures) {
    if (word.size() != code.n()) throw std::invalid_argument("rs_decode: word length");
    const PrimeField& f = code.field();
    Word plain = unscale(code, word);

    std::vector<std::size_t> live;  // 0-based positions not erased
    for (std::size_t i = 0; i < code.n(); ++i)
        if (!erasures.count(i + 1)) live.push_back(i);

    const std::size_t rad = code.radius(erasures.size());
    if (live.size() < code.delta() + 1 + rad) return std::nullopt;

    // Trial over error supports of weight 0..radius among live positions.
    for (std::size_t weight = 0; weight <= rad; ++weight) {
        std::vector<std::vector<std::size_t>> supports;
        std::vector<std::size_t> cur;
        supports_of_size(code.n(), weight, live, cur, 0, supports);
        for (const auto& sup : supports) {
            std::vector<std::size_t> keep;
            for (std::size_t idx : live)
                if (std::find(sup.begin(), sup.end(), idx) == sup.end()) keep.push_back(idx);
            auto fit = fit_on(code, plain, keep);
            if (!fit) continue;
            // minimum-weight fit over live positions is unique within radius
            Decoded dec;
            dec.secret = fit->first;
            dec.codeword = fit->second;
            if (code.is_scaled())
                for (std::size_t i = 0; i < code.n(); ++i)
                    dec.codeword[i] = f.mul(dec.codeword[i], code.scaling()[i]);
            for (std::size_t i = 0; i < code.n(); ++i) {
                if (word[i] != dec.codeword[i]) {
                    dec.error_positions.insert(i + 1);
                    dec.error_values.push_back(f.sub(word[i], dec.codeword[i]));
                }
            }
            // reported weight counts live errors only; erased positions ride along
            std::size_t live_errors = 0;
            for (std::size_t pos : dec.error_positions)
                if (!erasures.count(pos)) ++live_errors;
            if (live_errors > rad) continue;
            if (testing::fault_enabled("rs_decode"))
                dec.secret = f.add(dec.secret, 1);
            return dec;
        }
    }
    return std::nullopt;
}

Fel erasure_interpolate(const ReedSolomonCode& code, const Word& word,
                        const std::set<std::size_t>& positions) {
    if (word.size() != code.n()) throw std::invalid_argument("erasure_interpolate: word length");
    const PrimeField& f = code.field();
    const std::size_t need = code.delta() + 1 - (code.is_zero_variant() ? 1 : 0);
    if (positions.size() < need)
        throw std::invalid_argument("erasure_interpolate: too few positions");
    Word plain = unscale(code, word);

    std::vector<Fel> xs, ys;
    if (code.is_zero_variant()) {
        xs.push_back(0);
        ys.push_back(0);
    }
    for (std::size_t pos : positions) {
        if (pos < 1 || pos > code.n())
            throw std::invalid_argument("erasure_interpolate: position out of range");
        if (xs.size() < code.delta() + 1) {
            xs.push_back(static_cast<Fel>(pos));
            ys.push_back(plain[pos - 1]);
        }
    }
    Poly q = lagrange_coeffs(f, xs, ys);
    if (!q.is_zero() && q.degree() > code.delta())
        throw InconsistentShares("erasure_interpolate: anchor points exceed degree bound");
    for (std::size_t pos : positions)
        if (q.eval(f, static_cast<Fel>(pos)) != plain[pos - 1])
            throw InconsistentShares("erasure_interpolate: restriction not a codeword");
    return q.eval(f, 0);
}

bool in_neighborhood(const ReedSolomonCode& code, const Word& word,
                     const std::set<std::size_t>& B) {
    if (word.size() != code.n()) throw std::invalid_argument("in_neighborhood: word length");
    const PrimeField& f = code.field();
    Word plain = unscale(code, word);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < code.n(); ++i)
        if (!B.count(i + 1)) keep.push_back(i);

    std::vector<Fel> xs, ys;
    if (code.is_zero_variant()) {
        xs.push_back(0);
        ys.push_back(0);
    }
    for (std::size_t idx : keep) {
        if (xs.size() == code.delta() + 1) break;
        xs.push_back(static_cast<Fel>(idx + 1));
        ys.push_back(plain[idx]);
    }
    // Underdetermined: some completion always exists.
    if (xs.empty()) return true;
    Poly q = lagrange_coeffs(f, xs, ys);
    if (!q.is_zero() && q.degree() > code.delta()) return false;
    for (std::size_t idx : keep)
        if (q.eval(f, static_cast<Fel>(idx + 1)) != plain[idx]) return false;
    return true;
}

}  // namespace qpsim
