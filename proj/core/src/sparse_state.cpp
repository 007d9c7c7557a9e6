#include "qpsim/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qpsim {

namespace {
Amp omega_pow(std::uint32_t p, Fel e) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(e % p) / static_cast<double>(p);
    return {std::cos(ang), std::sin(ang)};
}

Fel sample_from(const std::vector<double>& dist, std::mt19937_64& rng) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i];
        if (u < acc) return static_cast<Fel>(i);
    }
    return static_cast<Fel>(dist.size() - 1);
}
}  // namespace

SparseState::SparseState(PrimeField f, const std::vector<WireInit>& wires, std::size_t cap)
    : field_(f), m_(static_cast<std::uint32_t>(wires.size())), cap_(cap) {
    if (m_ > kMaxWires) throw SupportOverflow("SparseState: too many wires");
    if (f.p() > 13) throw std::invalid_argument("SparseState: packed keys need p <= 13");
    // product state: expand UniformSum wires
    std::vector<std::pair<BasisKey, Amp>> cur{{BasisKey{}, Amp{1.0, 0.0}}};
    for (std::uint32_t w = 0; w < m_; ++w) {
        if (wires[w] == WireInit::Zero) continue;
        std::vector<std::pair<BasisKey, Amp>> next;
        next.reserve(cur.size() * f.p());
        const double s = 1.0 / std::sqrt(static_cast<double>(f.p()));
        for (auto& [k, a] : cur) {
            for (Fel v = 0; v < f.p(); ++v) {
                BasisKey nk = k;
                nk.set(w, v);
                next.push_back({nk, a * s});
            }
        }
        cur = std::move(next);
        check_cap(cur.size());
    }
    for (auto& [k, a] : cur) amps_.emplace(k, a);
}

void SparseState::check_cap(std::size_t next) const {
    if (next > cap_) throw SupportOverflow("SparseState: support cap exceeded");
}

void SparseState::apply_gate(const GateOp& g) {
    g.validate(m_, field_);
    const std::uint32_t p = field_.p();
    switch (g.kind) {
        case GateKind::Shift: {
            std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
            out.reserve(amps_.size());
            for (auto& [k, a] : amps_) {
                BasisKey nk = k;
                nk.set(g.wires[0], field_.add(k.get(g.wires[0]), g.scalar % p));
                out.emplace(nk, a);
            }
            amps_ = std::move(out);
            return;
        }
        case GateKind::ScalarMul: {
            std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
            out.reserve(amps_.size());
            for (auto& [k, a] : amps_) {
                BasisKey nk = k;
                nk.set(g.wires[0], field_.mul(k.get(g.wires[0]), g.scalar));
                out.emplace(nk, a);
            }
            amps_ = std::move(out);
            return;
        }
        case GateKind::PhaseShift: {
            for (auto& [k, a] : amps_)
                a *= omega_pow(p, field_.mul(g.scalar, k.get(g.wires[0])));
            return;
        }
        case GateKind::Sum: {
            std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
            out.reserve(amps_.size());
            for (auto& [k, a] : amps_) {
                BasisKey nk = k;
                nk.set(g.wires[1],
                       field_.add(k.get(g.wires[1]), field_.mul(g.scalar, k.get(g.wires[0]))));
                out.emplace(nk, a);
            }
            amps_ = std::move(out);
            return;
        }
        case GateKind::Toffoli: {
            std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
            out.reserve(amps_.size());
            for (auto& [k, a] : amps_) {
                BasisKey nk = k;
                Fel ab = field_.mul(k.get(g.wires[0]), k.get(g.wires[1]));
                nk.set(g.wires[2], field_.add(k.get(g.wires[2]), ab));
                out.emplace(nk, a);
            }
            amps_ = std::move(out);
            return;
        }
        case GateKind::Fourier:
        case GateKind::FourierInverse: {
            check_cap(amps_.size() * p);
            const bool inverse = g.kind == GateKind::FourierInverse;
            const double s = 1.0 / std::sqrt(static_cast<double>(p));
            std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
            out.reserve(amps_.size() * p);
            for (auto& [k, a] : amps_) {
                Fel av = k.get(g.wires[0]);
                for (Fel b = 0; b < p; ++b) {
                    Fel e = field_.mul(g.scalar, field_.mul(av, b));
                    if (inverse) e = field_.neg(e);
                    BasisKey nk = k;
                    nk.set(g.wires[0], b);
                    out[nk] += a * s * omega_pow(p, e);
                }
            }
            amps_ = std::move(out);
            prune();
            return;
        }
    }
}

void SparseState::apply_pauli(const PauliOperator& op) {
    const std::uint32_t p = field_.p();
    std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
    out.reserve(amps_.size());
    Amp global = omega_pow(p, op.phase);
    for (auto& [k, a] : amps_) {
        // X^x Z^z |v> = omega^{z.v} |v + x>
        Fel ph = 0;
        BasisKey nk = k;
        for (std::uint32_t w = 0; w < m_; ++w) {
            ph = field_.add(ph, field_.mul(op.z[w], k.get(w)));
            if (op.x[w] != 0) nk.set(w, field_.add(k.get(w), op.x[w]));
        }
        out.emplace(nk, a * global * omega_pow(p, ph));
    }
    amps_ = std::move(out);
}

std::vector<double> SparseState::wire_distribution(std::uint32_t wire) const {
    std::vector<double> dist(field_.p(), 0.0);
    for (auto& [k, a] : amps_) dist[k.get(wire)] += std::norm(a);
    double tot = 0.0;
    for (double d : dist) tot += d;
    if (tot > 0)
        for (double& d : dist) d /= tot;
    return dist;
}

Fel SparseState::measure_wire(std::uint32_t wire, std::mt19937_64& rng,
                              std::optional<Fel> forced) {
    auto dist = wire_distribution(wire);
    Fel v = forced ? *forced : sample_from(dist, rng);
    std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
    for (auto& [k, a] : amps_)
        if (k.get(wire) == v) out.emplace(k, a);
    if (out.empty()) throw std::logic_error("measure_wire: forced outcome has zero probability");
    amps_ = std::move(out);
    renormalize();
    return v;
}

Fel SparseState::measure_pauli(const PauliOperator& op, std::mt19937_64& rng,
                               std::optional<Fel> forced) {
    const std::uint32_t p = field_.p();
    // Pr[a] = (1/p) sum_k omega^{-ak} <psi|P^k|psi>
    std::vector<Amp> chi(p, Amp{0, 0});
    for (Fel k = 0; k < p; ++k) {
        PauliOperator pk = pauli_pow(field_, op, k);
        Amp acc{0, 0};
        for (auto& [key, a] : amps_) {
            // P^k |key> = omega^{phase + z.key} |key + x>
            BasisKey nk = key;
            Fel ph = pk.phase;
            for (std::uint32_t w = 0; w < m_; ++w) {
                ph = field_.add(ph, field_.mul(pk.z[w], key.get(w)));
                if (pk.x[w] != 0) nk.set(w, field_.add(key.get(w), pk.x[w]));
            }
            auto it = amps_.find(nk);
            if (it != amps_.end()) acc += std::conj(it->second) * a * omega_pow(p, ph);
        }
        chi[k] = acc;
    }
    std::vector<double> dist(p, 0.0);
    for (Fel a = 0; a < p; ++a) {
        Amp s{0, 0};
        for (Fel k = 0; k < p; ++k) s += omega_pow(p, field_.neg(field_.mul(a, k))) * chi[k];
        dist[a] = std::max(0.0, s.real() / p);
    }
    double tot = 0;
    for (double d : dist) tot += d;
    for (double& d : dist) d /= tot;
    Fel a = forced ? *forced : sample_from(dist, rng);

    // project: |post> = (1/p) sum_k omega^{-ak} P^k |psi>
    check_cap(amps_.size() * p);
    std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
    for (Fel k = 0; k < p; ++k) {
        PauliOperator pk = pauli_pow(field_, op, k);
        Amp pref = omega_pow(p, field_.neg(field_.mul(a, k))) / static_cast<double>(p);
        for (auto& [key, amp] : amps_) {
            BasisKey nk = key;
            Fel ph = pk.phase;
            for (std::uint32_t w = 0; w < m_; ++w) {
                ph = field_.add(ph, field_.mul(pk.z[w], key.get(w)));
                if (pk.x[w] != 0) nk.set(w, field_.add(key.get(w), pk.x[w]));
            }
            out[nk] += pref * amp * omega_pow(p, ph);
        }
    }
    amps_ = std::move(out);
    prune();
    renormalize();
    if (amps_.empty()) throw std::logic_error("measure_pauli: forced outcome has zero probability");
    return a;
}

double SparseState::total_probability() const {
    double t = 0;
    for (auto& [k, a] : amps_) t += std::norm(a);
    return t;
}

void SparseState::renormalize() {
    double t = total_probability();
    if (t <= 0) return;
    double s = 1.0 / std::sqrt(t);
    for (auto& [k, a] : amps_) a *= s;
}

void SparseState::prune(double threshold) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        if (std::abs(it->second) < threshold)
            it = amps_.erase(it);
        else
            ++it;
    }
}

Amp SparseState::amplitude(const BasisKey& k) const {
    auto it = amps_.find(k);
    return it == amps_.end() ? Amp{0, 0} : it->second;
}

Amp SparseState::inner_product(const SparseState& other) const {
    // <this|other>
    Amp acc{0, 0};
    const auto& small = amps_.size() < other.amps_.size() ? amps_ : other.amps_;
    const bool this_small = amps_.size() < other.amps_.size();
    for (auto& [k, a] : small) {
        if (this_small) {
            auto it = other.amps_.find(k);
            if (it != other.amps_.end()) acc += std::conj(a) * it->second;
        } else {
            auto it = amps_.find(k);
            if (it != amps_.end()) acc += std::conj(it->second) * a;
        }
    }
    return acc;
}

std::vector<Amp> SparseState::reduced_density(const std::vector<std::uint32_t>& wires) const {
    std::size_t dim = 1;
    for (std::size_t i = 0; i < wires.size(); ++i) dim *= field_.p();
    std::vector<Amp> rho(dim * dim, Amp{0, 0});
    // group keys by the complement part
    std::unordered_map<BasisKey, std::vector<std::pair<std::size_t, Amp>>, BasisKeyHash> groups;
    std::vector<bool> in_set(m_, false);
    for (auto w : wires) in_set[w] = true;
    for (auto& [k, a] : amps_) {
        BasisKey rest = k;
        std::size_t idx = 0;
        for (auto it = wires.rbegin(); it != wires.rend(); ++it) idx = idx * field_.p() + k.get(*it);
        for (std::uint32_t w = 0; w < m_; ++w)
            if (in_set[w]) rest.set(w, 0);
        groups[rest].push_back({idx, a});
    }
    for (auto& [rest, entries] : groups)
        for (auto& [i, ai] : entries)
            for (auto& [j, aj] : entries) rho[i * dim + j] += ai * std::conj(aj);
    return rho;
}

Fel SparseState::detach_wire(std::uint32_t wire) {
    Fel v = amps_.begin()->first.get(wire);
    for (auto& [k, a] : amps_)
        if (k.get(wire) != v) throw std::logic_error("detach_wire: wire not deterministic");
    std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
    out.reserve(amps_.size());
    for (auto& [k, a] : amps_) out.emplace(k.without(wire, m_), a);
    amps_ = std::move(out);
    --m_;
    return v;
}

void SparseState::absorb(const SparseState& other) {
    if (m_ + other.m_ > kMaxWires) throw SupportOverflow("absorb: too many wires");
    check_cap(amps_.size() * other.amps_.size());
    std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
    out.reserve(amps_.size() * other.amps_.size());
    for (auto& [k, a] : amps_) {
        for (auto& [ok, oa] : other.amps_) {
            BasisKey nk = k;
            for (std::uint32_t w = 0; w < other.m_; ++w) nk.set(m_ + w, ok.get(w));
            out.emplace(nk, a * oa);
        }
    }
    amps_ = std::move(out);
    m_ += other.m_;
}

SparseState SparseState::sum_measure_merge(SparseState data, const SparseState& anc,
                                           const std::vector<std::uint32_t>& targets,
                                           const std::vector<std::uint32_t>& controls, Fel coeff,
                                           std::mt19937_64& rng, std::vector<Fel>& outcomes_out) {
    if (targets.size() != controls.size())
        throw std::invalid_argument("sum_measure_merge: arity mismatch");
    const PrimeField& f = data.field_;
    if (data.m_ + anc.m_ > kMaxWires) throw SupportOverflow("sum_measure_merge: too many wires");

    // Post-measurement basis states are labelled by (data key, anc key)
    // pairs and never interfere, so sampling each register independently
    // samples the joint outcome word faithfully.
    auto sample_key = [&rng](const SparseState& s) {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        double acc = 0.0;
        const BasisKey* last = nullptr;
        for (auto& [k, a] : s.amps_) {
            acc += std::norm(a);
            last = &k;
            if (u < acc) return k;
        }
        return *last;
    };
    BasisKey dk = sample_key(data);
    BasisKey ek = sample_key(anc);
    outcomes_out.clear();
    for (std::size_t i = 0; i < targets.size(); ++i)
        outcomes_out.push_back(f.add(dk.get(targets[i]), f.mul(coeff, ek.get(controls[i]))));

    // Index ancilla keys by their control-wire values; a data key then
    // determines the matching bucket, so the surviving pairs are found in
    // O(|data| + |anc|) instead of the full product.
    std::unordered_map<BasisKey, std::vector<std::pair<BasisKey, Amp>>, BasisKeyHash> buckets;
    buckets.reserve(anc.amps_.size());
    for (auto& [ok2, oa] : anc.amps_) {
        BasisKey ctrl{};
        for (std::size_t i = 0; i < controls.size(); ++i)
            ctrl.set(static_cast<std::uint32_t>(i), ok2.get(controls[i]));
        buckets[ctrl].push_back({ok2, oa});
    }

    Fel inv_c = f.inv(coeff);
    std::unordered_map<BasisKey, Amp, BasisKeyHash> out;
    out.reserve(data.amps_.size());
    for (auto& [k, a] : data.amps_) {
        BasisKey need{};
        for (std::size_t i = 0; i < targets.size(); ++i)
            need.set(static_cast<std::uint32_t>(i),
                     f.mul(inv_c, f.sub(outcomes_out[i], k.get(targets[i]))));
        auto it = buckets.find(need);
        if (it == buckets.end()) continue;
        for (auto& [ok2, oa] : it->second) {
            BasisKey nk = k;
            for (std::size_t i = 0; i < targets.size(); ++i) nk.set(targets[i], outcomes_out[i]);
            for (std::uint32_t w = 0; w < anc.m_; ++w) nk.set(data.m_ + w, ok2.get(w));
            out.emplace(nk, a * oa);
        }
        if (out.size() > data.cap_) throw SupportOverflow("sum_measure_merge: cap exceeded");
    }
    data.amps_ = std::move(out);
    data.m_ += anc.m_;
    data.renormalize();
    return data;
}

SparseState SparseState::from_entries(PrimeField f, std::uint32_t m,
                                      const std::vector<std::pair<BasisKey, Amp>>& entries,
                                      std::size_t cap) {
    std::vector<WireInit> inits(m, WireInit::Zero);
    SparseState s(f, inits, cap);
    s.amps_.clear();
    if (entries.size() > cap) throw SupportOverflow("from_entries: support cap exceeded");
    for (auto& [k, a] : entries) s.amps_[k] = a;
    return s;
}

SparseState SparseState::from_tableau(const StabilizerTableau& t, std::size_t cap) {
    const PrimeField& f = t.field();
    const std::size_t m = t.num_wires();
    if (m > kMaxWires) throw SupportOverflow("from_tableau: too many wires");
    const std::uint32_t p = f.p();

    // Row-reduce generators by X-part; leftovers are Z-only.
    std::vector<PauliOperator> gens;
    gens.reserve(m);
    for (std::size_t i = 0; i < m; ++i) gens.push_back(t.stabilizer(i));
    std::vector<PauliOperator> xgens;
    std::size_t at = 0;
    for (std::uint32_t w = 0; w < m; ++w) {
        std::size_t piv = at;
        while (piv < gens.size() && gens[piv].x[w] == 0) ++piv;
        if (piv == gens.size()) continue;
        std::swap(gens[at], gens[piv]);
        gens[at] = pauli_pow(f, gens[at], f.inv(gens[at].x[w]));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i == at) continue;
            Fel c = gens[i].x[w];
            if (c != 0) gens[i] = pauli_mul(f, gens[i], pauli_pow(f, gens[at], f.neg(c)));
        }
        ++at;
    }
    xgens.assign(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(at));
    const std::size_t r = xgens.size();
    std::size_t supp = 1;
    for (std::size_t i = 0; i < r; ++i) {
        supp *= p;
        if (supp > cap) throw SupportOverflow("from_tableau: support cap exceeded");
    }

    // Solve for one support point x0 from the Z-only constraints
    // z.x0 = -phase.
    std::vector<std::vector<Fel>> eqs;  // [z_1..z_m | rhs]
    for (std::size_t i = at; i < gens.size(); ++i) {
        std::vector<Fel> row(m + 1);
        for (std::size_t w = 0; w < m; ++w) row[w] = gens[i].z[w];
        row[m] = f.neg(gens[i].phase);
        eqs.push_back(std::move(row));
    }
    std::vector<Fel> x0(m, 0);
    std::size_t er = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < m && er < eqs.size(); ++col) {
        std::size_t piv = er;
        while (piv < eqs.size() && eqs[piv][col] == 0) ++piv;
        if (piv == eqs.size()) continue;
        std::swap(eqs[er], eqs[piv]);
        Fel inv = f.inv(eqs[er][col]);
        for (auto& v : eqs[er]) v = f.mul(v, inv);
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            if (i == er) continue;
            Fel c = eqs[i][col];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= m; ++j)
                eqs[i][j] = f.sub(eqs[i][j], f.mul(c, eqs[er][j]));
        }
        pivots.push_back(col);
        ++er;
    }
    for (std::size_t i = 0; i < er; ++i) x0[pivots[i]] = eqs[i][m];

    BasisKey k0{};
    for (std::uint32_t w = 0; w < m; ++w) k0.set(w, x0[w]);

    std::vector<WireInit> inits(m, WireInit::Zero);
    SparseState s(f, inits, cap);
    s.amps_.clear();

    // amplitudes: for each lambda, (prod h_i^{lambda_i}) |x0>
    double norm = 1.0 / std::sqrt(static_cast<double>(supp));
    PauliOperator acc = PauliOperator::identity(m);
    std::function<void(std::size_t, const PauliOperator&)> walk =
        [&](std::size_t depth, const PauliOperator& cur) {
            if (depth == r) {
                BasisKey nk = k0;
                Fel ph = cur.phase;
                for (std::uint32_t w = 0; w < m; ++w) {
                    ph = f.add(ph, f.mul(cur.z[w], k0.get(w)));
                    if (cur.x[w] != 0) nk.set(w, f.add(k0.get(w), cur.x[w]));
                }
                double ang = 2.0 * std::numbers::pi * ph / static_cast<double>(p);
                s.amps_[nk] = Amp{norm * std::cos(ang), norm * std::sin(ang)};
                return;
            }
            PauliOperator step = cur;
            for (Fel v = 0; v < p; ++v) {
                walk(depth + 1, step);
                if (v + 1u < p) step = pauli_mul(f, step, xgens[depth]);
            }
        };
    walk(0, acc);
    return s;
}

}  // namespace qpsim
