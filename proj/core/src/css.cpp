#include "qpsim/css.hpp"

#include <algorithm>

#include "qpsim/errors.hpp"
#include "qpsim/poly.hpp"

namespace qpsim {

namespace {

// Coefficients lambda_1..lambda_delta of a polynomial with lambda(0) = 0
// and lambda(b) = 1 on every untouched position.
std::vector<Fel> clearing_poly(const PrimeField& f, std::size_t delta,
                               const std::set<std::size_t>& untouched) {
    std::vector<Fel> coeffs(delta, 0);
    if (untouched.empty()) return coeffs;
    if (untouched.size() > delta)
        throw std::invalid_argument("clearing_poly: too many untouched positions");
    std::vector<Fel> xs{0}, ys{0};
    for (auto b : untouched) {
        xs.push_back(static_cast<Fel>(b));
        ys.push_back(1);
    }
    Poly lam = lagrange_coeffs(f, xs, ys);
    for (std::size_t k = 1; k < lam.coeffs.size(); ++k) coeffs[k - 1] = lam.coeffs[k];
    return coeffs;
}

Fel eval_clearing(const PrimeField& f, const std::vector<Fel>& coeffs, Fel x) {
    Fel acc = 0, xp = 1;
    for (Fel c : coeffs) {
        xp = f.mul(xp, x);
        acc = f.add(acc, f.mul(c, xp));
    }
    return acc;
}

// Unique solution of rows|sup . e_sup = syndrome with every entry nonzero,
// or nullopt.
std::optional<std::vector<Fel>> solve_on_support(const PrimeField& f,
                                                 const std::vector<Word>& rows,
                                                 const std::vector<Fel>& syndrome, std::size_t n,
                                                 const std::vector<std::size_t>& sup) {
    const std::size_t k = sup.size(), r = rows.size();
    std::vector<std::vector<Fel>> a(r, std::vector<Fel>(k + 1, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = rows[i][sup[j]];
        a[i][k] = syndrome[i];
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < k && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && a[piv][col] == 0) ++piv;
        if (piv == r) continue;
        std::swap(a[rank], a[piv]);
        Fel ic = f.inv(a[rank][col]);
        for (auto& v : a[rank]) v = f.mul(v, ic);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Fel c = a[i][col];
            for (std::size_t j = 0; j <= k; ++j) a[i][j] = f.sub(a[i][j], f.mul(c, a[rank][j]));
        }
        ++rank;
    }
    for (std::size_t i = rank; i < r; ++i)
        if (a[i][k] != 0) return std::nullopt;
    if (rank != k) return std::nullopt;
    std::vector<Fel> e(n, 0);
    for (std::size_t j = 0; j < k; ++j) {
        if (a[j][k] == 0) return std::nullopt;  // weight below the support size
        e[sup[j]] = a[j][k];
    }
    return e;
}

void enumerate_supports(std::size_t n, std::size_t size, std::size_t start,
                        std::vector<std::size_t>& cur,
                        std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == size) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        enumerate_supports(n, size, i + 1, cur, out);
        cur.pop_back();
    }
}

// Min-weight error e with rows . e = syndrome, weight <= max_weight.
std::optional<std::vector<Fel>> solve_error(const PrimeField& f, const std::vector<Word>& rows,
                                            const std::vector<Fel>& syndrome, std::size_t n,
                                            std::size_t max_weight) {
    bool all_zero = std::all_of(syndrome.begin(), syndrome.end(), [](Fel s) { return s == 0; });
    if (all_zero) return std::vector<Fel>(n, 0);
    for (std::size_t w = 1; w <= max_weight; ++w) {
        std::vector<std::vector<std::size_t>> sups;
        std::vector<std::size_t> cur;
        enumerate_supports(n, w, 0, cur, sups);
        for (const auto& sup : sups)
            if (auto e = solve_on_support(f, rows, syndrome, n, sup)) return e;
    }
    return std::nullopt;
}

// Parity rows for the computational-basis (V-side) syndrome: a basis of
// the dual of V, i.e. the scaled zero-variant family of degree delta'.
std::vector<Word> v_side_checks(const CssCode& code) {
    const PrimeField& f = code.f;
    auto d = dual_constants(f, code.n);
    std::vector<Word> rows;
    for (std::size_t k = 1; k <= code.delta_prime(); ++k) {
        Word h(code.n);
        for (std::size_t i = 1; i <= code.n; ++i)
            h[i - 1] = f.mul(d[i - 1], f.pow(static_cast<Fel>(i), k));
        rows.push_back(std::move(h));
    }
    return rows;
}

// X-type check exponents for the Fourier-basis (W-side) syndrome: a basis
// of the dual of W, the plain zero-variant family of degree delta.
std::vector<Word> w_side_checks(const CssCode& code) {
    const PrimeField& f = code.f;
    std::vector<Word> rows;
    for (std::size_t k = 1; k <= code.delta; ++k) {
        Word g(code.n);
        for (std::size_t i = 1; i <= code.n; ++i) g[i - 1] = f.pow(static_cast<Fel>(i), k);
        rows.push_back(std::move(g));
    }
    return rows;
}

void discard_block_ancillas(QuantumEngine& eng, const CssCode& code,
                            const std::vector<WireId>& coeff_wires, std::mt19937_64& rng) {
    // after the inverse encoder: wires 1..delta hold uniform-superposition
    // randomness, the rest are zero. Tampered states may leave them
    // entangled; measuring them out is then a faithful discard.
    for (std::size_t k = 1; k < coeff_wires.size(); ++k) {
        WireId w = coeff_wires[k];
        try {
            if (k <= code.delta)
                eng.drop_uniform(w);
            else
                eng.drop_deterministic(w);
        } catch (const std::logic_error&) {
            eng.measure_drop(w, rng);
        }
    }
}

}  // namespace

std::vector<PauliOperator> cb_check_operators(const CssCode& code,
                                              const std::set<std::size_t>& B) {
    const PrimeField& f = code.f;
    const std::size_t n = code.n;
    std::vector<PauliOperator> ops;
    // Z-type: h_i = d_i * r(i), deg r <= delta', r(0) = 0, r|B = 0
    {
        std::vector<Fel> roots{0};
        for (auto b : B) roots.push_back(static_cast<Fel>(b));
        auto d = dual_constants(f, n);
        std::size_t avail = code.delta_prime() >= B.size() ? code.delta_prime() - B.size() : 0;
        for (std::size_t k = 0; k < avail; ++k) {
            // r(x) = x^{k} * x * prod_{b in B}(x - b)
            PauliOperator op = PauliOperator::identity(n);
            for (std::size_t i = 1; i <= n; ++i) {
                Fel v = f.pow(static_cast<Fel>(i), k + 1);
                for (auto b : B) v = f.mul(v, f.sub(static_cast<Fel>(i), static_cast<Fel>(b)));
                op.z[i - 1] = f.mul(d[i - 1], v);
            }
            ops.push_back(std::move(op));
        }
    }
    // X-type: g(i), deg g <= delta, g(0) = 0, g|B = 0
    {
        std::size_t avail = code.delta >= B.size() ? code.delta - B.size() : 0;
        for (std::size_t k = 0; k < avail; ++k) {
            PauliOperator op = PauliOperator::identity(n);
            for (std::size_t i = 1; i <= n; ++i) {
                Fel v = f.pow(static_cast<Fel>(i), k + 1);
                for (auto b : B) v = f.mul(v, f.sub(static_cast<Fel>(i), static_cast<Fel>(b)));
                op.x[i - 1] = v;
            }
            ops.push_back(std::move(op));
        }
    }
    return ops;
}

bool cb_member(QuantumEngine& eng, const CodeBlock& block, const std::set<std::size_t>& B) {
    for (const auto& op : cb_check_operators(block.code, B))
        if (!eng.syndrome_is_zero(block.wires, op)) return false;
    return true;
}

CodeBlock encode(QuantumEngine& eng, const CssCode& code, WireId input) {
    std::vector<WireInit> inits;
    for (std::size_t k = 0; k < code.delta; ++k) inits.push_back(WireInit::UniformSum);
    for (std::size_t k = code.delta + 1; k < code.n; ++k) inits.push_back(WireInit::Zero);
    auto anc = eng.alloc(inits);
    std::vector<WireId> wires{input};
    wires.insert(wires.end(), anc.begin(), anc.end());
    eng.apply_linear(vandermonde(code.f, code.n), wires);
    return CodeBlock{wires, code};
}

CodeBlock encode_classical(QuantumEngine& eng, const CssCode& code, WireId input,
                           const std::vector<Fel>& randomness) {
    if (randomness.size() != code.delta)
        throw std::invalid_argument("encode_classical: need delta randomness values");
    std::vector<WireInit> inits(code.n - 1, WireInit::Zero);
    auto anc = eng.alloc(inits);
    for (std::size_t k = 0; k < code.delta; ++k)
        if (randomness[k] % code.f.p() != 0)
            eng.apply(GateKind::Shift, {anc[k]}, randomness[k]);
    std::vector<WireId> wires{input};
    wires.insert(wires.end(), anc.begin(), anc.end());
    eng.apply_linear(vandermonde(code.f, code.n), wires);
    return CodeBlock{wires, code};
}

DecodeDOutcome decode_D(QuantumEngine& eng, const CodeBlock& block, std::mt19937_64& rng) {
    const CssCode& code = block.code;
    const PrimeField& f = code.f;
    const std::size_t n = code.n;
    DecodeDOutcome out;
    out.x_error.assign(n, 0);
    out.z_error.assign(n, 0);

    // V-side syndrome via parity-check ancillas: s_j = h_j . word
    auto hv = v_side_checks(code);
    std::vector<Fel> syn_v;
    for (const auto& h : hv) {
        WireId anc = eng.alloc_one(WireInit::Zero);
        for (std::size_t i = 0; i < n; ++i)
            if (h[i] != 0) eng.apply(GateKind::Sum, {block.wires[i], anc}, h[i]);
        syn_v.push_back(eng.measure_drop(anc, rng));
    }
    auto xe = solve_error(f, hv, syn_v, n, code.t());
    if (!xe) return out;
    for (std::size_t i = 0; i < n; ++i) {
        if ((*xe)[i] != 0) {
            PauliOperator corr = PauliOperator::single(1, 0, f.neg((*xe)[i]), 0);
            eng.apply_pauli({block.wires[i]}, corr);
        }
        out.x_error[i] = (*xe)[i];
    }

    // W-side syndrome: measure the X-type stabilizer generators; a Z-error
    // f shifts the eigenvalue of X^g by -g.f.
    auto gw = w_side_checks(code);
    std::vector<Fel> syn_w;
    for (const auto& g : gw) {
        PauliOperator op = PauliOperator::identity(n);
        for (std::size_t i = 0; i < n; ++i) op.x[i] = g[i];
        Fel eig = eng.measure_pauli(block.wires, op, rng);
        syn_w.push_back(f.neg(eig));
    }
    auto ze = solve_error(f, gw, syn_w, n, code.t());
    if (!ze) return out;
    for (std::size_t i = 0; i < n; ++i) {
        if ((*ze)[i] != 0) {
            PauliOperator corr = PauliOperator::single(1, 0, 0, f.neg((*ze)[i]));
            eng.apply_pauli({block.wires[i]}, corr);
        }
        out.z_error[i] = (*ze)[i];
    }

    // inverse encoder: evaluations back to coefficients
    eng.apply_linear(matrix_inverse(f, vandermonde(f, n)), block.wires);
    out.logical = block.wires[0];
    out.ok = true;
    discard_block_ancillas(eng, code, block.wires, rng);
    return out;
}

WireId ideal_recover(QuantumEngine& eng, const CodeBlock& block,
                     const std::set<std::size_t>& chosen,
                     const std::set<std::size_t>& untouched) {
    const CssCode& code = block.code;
    const PrimeField& f = code.f;
    const std::size_t delta = code.delta;
    if (chosen.size() != delta + 1) throw std::invalid_argument("ideal_recover: need delta+1 positions");

    // interpolation: values at chosen points -> (q(0), c_1..c_delta)
    std::vector<Fel> pts(chosen.begin(), chosen.end());
    Matrix vdm(delta + 1, std::vector<Fel>(delta + 1));
    for (std::size_t r = 0; r < delta + 1; ++r)
        for (std::size_t c = 0; c < delta + 1; ++c)
            vdm[r][c] = f.pow(static_cast<Fel>(pts[r]), c);
    std::vector<WireId> iw;
    for (auto pos : chosen) iw.push_back(block.wires[pos - 1]);
    eng.apply_linear(matrix_inverse(f, vdm), iw);
    WireId logical = iw[0];

    // clearing sums: relabel the randomness so everything but the output
    // is independent of the secret
    auto lam = clearing_poly(f, delta, untouched);
    for (std::size_t k = 1; k <= delta; ++k)
        if (lam[k - 1] != 0) eng.apply(GateKind::Sum, {logical, iw[k]}, lam[k - 1]);
    for (std::size_t pos = 1; pos <= code.n; ++pos) {
        if (chosen.count(pos) || untouched.count(pos)) continue;
        Fel coeff = f.sub(eval_clearing(f, lam, static_cast<Fel>(pos)), 1);
        if (coeff != 0) eng.apply(GateKind::Sum, {logical, block.wires[pos - 1]}, coeff);
    }
    return logical;
}

WireId ideal_recover(QuantumEngine& eng, const CodeBlock& block, const std::set<std::size_t>& B) {
    std::set<std::size_t> chosen;
    for (std::size_t pos = 1; pos <= block.code.n && chosen.size() < block.code.delta + 1; ++pos)
        if (!B.count(pos)) chosen.insert(pos);
    return ideal_recover(eng, block, chosen, B);
}

void transversal_shift(QuantumEngine& eng, CodeBlock& block, Fel c) {
    for (auto w : block.wires) eng.apply(GateKind::Shift, {w}, c);
}

void transversal_scalar_mul(QuantumEngine& eng, CodeBlock& block, Fel c) {
    for (auto w : block.wires) eng.apply(GateKind::ScalarMul, {w}, c);
}

void transversal_phase_shift(QuantumEngine& eng, CodeBlock& block, Fel c) {
    auto d = dual_constants(block.code.f, block.code.n);
    for (std::size_t i = 0; i < block.wires.size(); ++i) {
        Fel e = block.code.f.mul(c, d[i]);
        if (e != 0) eng.apply(GateKind::PhaseShift, {block.wires[i]}, e);
    }
}

void transversal_sum(QuantumEngine& eng, const CodeBlock& control, CodeBlock& target, Fel c) {
    if (!(control.code == target.code))
        throw CodeMismatch("transversal_sum: operand codes differ");
    for (std::size_t i = 0; i < target.wires.size(); ++i)
        eng.apply(GateKind::Sum, {control.wires[i], target.wires[i]}, c);
}

void transversal_fourier(QuantumEngine& eng, CodeBlock& block, bool inverse) {
    const PrimeField& f = block.code.f;
    auto d = dual_constants(f, block.code.n);
    for (std::size_t i = 0; i < block.wires.size(); ++i) {
        eng.apply(inverse ? GateKind::FourierInverse : GateKind::Fourier, {block.wires[i]}, 1);
        eng.apply(GateKind::ScalarMul, {block.wires[i]}, f.inv(d[i]));
    }
    block.code = block.code.dual();
}

void transversal_toffoli(QuantumEngine& eng, const CodeBlock& a, const CodeBlock& b,
                         CodeBlock& target) {
    if (!(a.code == b.code) || !(a.code == target.code))
        throw CodeMismatch("transversal_toffoli: operand codes differ");
    if (target.code.n < 3 * target.code.delta + 1)
        throw CodeMismatch("transversal_toffoli: need n >= 3*delta + 1");
    for (std::size_t i = 0; i < target.wires.size(); ++i)
        eng.apply(GateKind::Toffoli, {a.wires[i], b.wires[i], target.wires[i]});
    target.code = target.code.dual();
}

std::optional<Fel> logical_measure(QuantumEngine& eng, const CodeBlock& block,
                                   std::mt19937_64& rng) {
    Word w(block.code.n);
    for (std::size_t i = 0; i < block.wires.size(); ++i)
        w[i] = eng.measure(block.wires[i], rng);
    auto dec = rs_decode(block.code.V, w);
    if (!dec) return std::nullopt;
    return dec->secret;
}

void degree_reduce_correct(QuantumEngine& eng, CodeBlock& ancilla, Fel b) {
    // logical X^b S_{-1}: componentwise scalar -1 then shift b
    const PrimeField& f = ancilla.code.f;
    for (auto w : ancilla.wires) {
        eng.apply(GateKind::ScalarMul, {w}, f.neg(1));
        if (b != 0) eng.apply(GateKind::Shift, {w}, b);
    }
}

std::optional<DegreeReduceResult> degree_reduce(QuantumEngine& eng, const CodeBlock& data,
                                                const CodeBlock& ancilla, std::mt19937_64& rng,
                                                std::optional<Fel> decode_override) {
    if (data.code.n != ancilla.code.n)
        throw CodeMismatch("degree_reduce: length mismatch");
    if (!(ancilla.code == data.code.dual()))
        throw CodeMismatch("degree_reduce: ancilla must carry the base code");

    auto word = eng.sum_measure(data.wires, ancilla.wires, 1, rng);
    for (auto w : data.wires) eng.drop_deterministic(w);

    DegreeReduceResult res{ancilla, word, 0};
    if (decode_override) {
        res.decoded_b = *decode_override;
    } else {
        auto dec = rs_decode(data.code.V, word);
        if (!dec) return std::nullopt;
        res.decoded_b = dec->secret;
    }
    degree_reduce_correct(eng, res.block, res.decoded_b);
    return res;
}

}  // namespace qpsim
