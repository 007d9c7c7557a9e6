#include "qpsim/dense_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpsim/errors.hpp"

namespace qpsim {

namespace {
Amp omega_pow(std::uint32_t p, Fel e) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(e % p) / static_cast<double>(p);
    return {std::cos(ang), std::sin(ang)};
}
}  // namespace

DenseState::DenseState(PrimeField f, const std::vector<WireInit>& wires)
    : field_(f), m_(static_cast<std::uint32_t>(wires.size())) {
    stride_.resize(m_);
    std::size_t d = 1;
    for (std::uint32_t w = 0; w < m_; ++w) {
        stride_[w] = d;
        if (d > kMaxDim / f.p()) throw OracleTooLarge("DenseState: dimension overflow");
        d *= f.p();
    }
    amp_.assign(d, Amp{0, 0});
    // product initial state
    double norm = 1.0;
    std::size_t sum_wires = 0;
    for (auto k : wires)
        if (k == WireInit::UniformSum) ++sum_wires;
    norm = 1.0 / std::sqrt(std::pow(static_cast<double>(f.p()), static_cast<double>(sum_wires)));
    // enumerate support of the product state
    std::vector<std::uint32_t> sums;
    for (std::uint32_t w = 0; w < m_; ++w)
        if (wires[w] == WireInit::UniformSum) sums.push_back(w);
    std::size_t count = 1;
    for (std::size_t i = 0; i < sums.size(); ++i) count *= f.p();
    for (std::size_t e = 0; e < count; ++e) {
        std::size_t idx = 0, t = e;
        for (auto w : sums) {
            idx += (t % f.p()) * stride_[w];
            t /= f.p();
        }
        amp_[idx] = Amp{norm, 0};
    }
}

void DenseState::apply_gate(const GateOp& g) {
    g.validate(m_, field_);
    const std::uint32_t p = field_.p();
    const std::size_t d = amp_.size();
    switch (g.kind) {
        case GateKind::Shift: {
            std::vector<Amp> out(d);
            const std::size_t s = stride_[g.wires[0]];
            for (std::size_t i = 0; i < d; ++i) {
                Fel v = digit(i, g.wires[0]);
                std::size_t j = i - v * s + field_.add(v, g.scalar % p) * s;
                out[j] = amp_[i];
            }
            amp_ = std::move(out);
            return;
        }
        case GateKind::ScalarMul: {
            std::vector<Amp> out(d);
            const std::size_t s = stride_[g.wires[0]];
            for (std::size_t i = 0; i < d; ++i) {
                Fel v = digit(i, g.wires[0]);
                std::size_t j = i - v * s + field_.mul(v, g.scalar) * s;
                out[j] = amp_[i];
            }
            amp_ = std::move(out);
            return;
        }
        case GateKind::PhaseShift: {
            for (std::size_t i = 0; i < d; ++i)
                amp_[i] *= omega_pow(p, field_.mul(g.scalar, digit(i, g.wires[0])));
            return;
        }
        case GateKind::Sum: {
            std::vector<Amp> out(d);
            const std::size_t st = stride_[g.wires[1]];
            for (std::size_t i = 0; i < d; ++i) {
                Fel a = digit(i, g.wires[0]);
                Fel b = digit(i, g.wires[1]);
                Fel nb = field_.add(b, field_.mul(g.scalar, a));
                out[i - b * st + nb * st] = amp_[i];
            }
            amp_ = std::move(out);
            return;
        }
        case GateKind::Toffoli: {
            std::vector<Amp> out(d);
            const std::size_t st = stride_[g.wires[2]];
            for (std::size_t i = 0; i < d; ++i) {
                Fel ab = field_.mul(digit(i, g.wires[0]), digit(i, g.wires[1]));
                Fel c = digit(i, g.wires[2]);
                out[i - c * st + field_.add(c, ab) * st] = amp_[i];
            }
            amp_ = std::move(out);
            return;
        }
        case GateKind::Fourier:
        case GateKind::FourierInverse: {
            const bool inverse = g.kind == GateKind::FourierInverse;
            const std::size_t s = stride_[g.wires[0]];
            const double scale = 1.0 / std::sqrt(static_cast<double>(p));
            std::vector<Amp> buf(p);
            for (std::size_t base = 0; base < d; ++base) {
                if (digit(base, g.wires[0]) != 0) continue;
                for (Fel a = 0; a < p; ++a) buf[a] = amp_[base + a * s];
                for (Fel b = 0; b < p; ++b) {
                    Amp acc{0, 0};
                    for (Fel a = 0; a < p; ++a) {
                        Fel e = field_.mul(g.scalar, field_.mul(a, b));
                        if (inverse) e = field_.neg(e);
                        acc += buf[a] * omega_pow(p, e);
                    }
                    amp_[base + b * s] = acc * scale;
                }
            }
            return;
        }
    }
}

void DenseState::apply_pauli(const PauliOperator& op) {
    const std::uint32_t p = field_.p();
    const std::size_t d = amp_.size();
    std::vector<Amp> out(d);
    for (std::size_t i = 0; i < d; ++i) {
        Fel ph = op.phase;
        std::size_t j = i;
        for (std::uint32_t w = 0; w < m_; ++w) {
            Fel v = digit(i, w);
            ph = field_.add(ph, field_.mul(op.z[w], v));
            if (op.x[w] != 0) j = j - v * stride_[w] + field_.add(v, op.x[w]) * stride_[w];
        }
        out[j] += amp_[i] * omega_pow(p, ph);
    }
    amp_ = std::move(out);
}

void DenseState::apply_unitary(const std::vector<std::uint32_t>& wires,
                               const std::vector<Amp>& matrix) {
    const std::uint32_t p = field_.p();
    std::size_t k = 1;
    for (std::size_t i = 0; i < wires.size(); ++i) k *= p;
    if (matrix.size() != k * k) throw std::invalid_argument("apply_unitary: matrix size");
    const std::size_t d = amp_.size();
    std::vector<Amp> gathered(k);
    std::vector<std::size_t> offs(k);
    for (std::size_t sub = 0; sub < k; ++sub) {
        std::size_t off = 0, t = sub;
        for (auto w : wires) {
            off += (t % p) * stride_[w];
            t /= p;
        }
        offs[sub] = off;
    }
    for (std::size_t base = 0; base < d; ++base) {
        bool anchor = true;
        for (auto w : wires)
            if (digit(base, w) != 0) {
                anchor = false;
                break;
            }
        if (!anchor) continue;
        for (std::size_t sub = 0; sub < k; ++sub) gathered[sub] = amp_[base + offs[sub]];
        for (std::size_t row = 0; row < k; ++row) {
            Amp acc{0, 0};
            for (std::size_t col = 0; col < k; ++col) acc += matrix[row * k + col] * gathered[col];
            amp_[base + offs[row]] = acc;
        }
    }
}

std::vector<double> DenseState::wire_distribution(std::uint32_t wire) const {
    std::vector<double> dist(field_.p(), 0.0);
    for (std::size_t i = 0; i < amp_.size(); ++i) dist[digit(i, wire)] += std::norm(amp_[i]);
    double tot = 0;
    for (double v : dist) tot += v;
    if (tot > 0)
        for (double& v : dist) v /= tot;
    return dist;
}

std::vector<double> DenseState::full_distribution() const {
    std::vector<double> dist(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) dist[i] = std::norm(amp_[i]);
    return dist;
}

Fel DenseState::measure_wire(std::uint32_t wire, std::mt19937_64& rng, std::optional<Fel> forced) {
    auto dist = wire_distribution(wire);
    Fel v;
    if (forced) {
        v = *forced;
    } else {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        double acc = 0;
        v = field_.p() - 1;
        for (Fel a = 0; a < field_.p(); ++a) {
            acc += dist[a];
            if (u < acc) {
                v = a;
                break;
            }
        }
    }
    double norm = 0;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (digit(i, wire) != v)
            amp_[i] = Amp{0, 0};
        else
            norm += std::norm(amp_[i]);
    }
    if (norm <= 0) throw std::logic_error("measure_wire: forced outcome has zero probability");
    double s = 1.0 / std::sqrt(norm);
    for (auto& a : amp_) a *= s;
    return v;
}

Amp DenseState::inner_product(const DenseState& other) const {
    Amp acc{0, 0};
    for (std::size_t i = 0; i < amp_.size(); ++i) acc += std::conj(amp_[i]) * other.amp_[i];
    return acc;
}

std::vector<Amp> DenseState::reduced_density(const std::vector<std::uint32_t>& wires) const {
    const std::uint32_t p = field_.p();
    std::size_t k = 1;
    for (std::size_t i = 0; i < wires.size(); ++i) k *= p;
    std::vector<Amp> rho(k * k, Amp{0, 0});
    std::vector<std::size_t> offs(k);
    for (std::size_t sub = 0; sub < k; ++sub) {
        std::size_t off = 0, t = sub;
        for (auto w : wires) {
            off += (t % p) * stride_[w];
            t /= p;
        }
        offs[sub] = off;
    }
    for (std::size_t base = 0; base < amp_.size(); ++base) {
        bool anchor = true;
        for (auto w : wires)
            if (digit(base, w) != 0) {
                anchor = false;
                break;
            }
        if (!anchor) continue;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                rho[i * k + j] += amp_[base + offs[i]] * std::conj(amp_[base + offs[j]]);
    }
    return rho;
}

double DenseState::stabilizer_deviation(const PauliOperator& op) const {
    DenseState copy = *this;
    copy.apply_pauli(op);
    double worst = 0;
    for (std::size_t i = 0; i < amp_.size(); ++i)
        worst = std::max(worst, std::abs(copy.amp_[i] - amp_[i]));
    return worst;
}

DenseState DenseState::from_sparse(const SparseState& s) {
    std::vector<WireInit> inits(s.num_wires(), WireInit::Zero);
    DenseState d(s.field(), inits);
    d.amp_.assign(d.amp_.size(), Amp{0, 0});
    for (auto& [k, a] : s.amplitudes()) {
        std::size_t idx = 0;
        for (std::uint32_t w = 0; w < s.num_wires(); ++w) idx += k.get(w) * d.stride_[w];
        d.amp_[idx] = a;
    }
    return d;
}

SparseState DenseState::to_sparse(std::size_t cap, double threshold) const {
    std::vector<std::pair<BasisKey, Amp>> entries;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (std::abs(amp_[i]) < threshold) continue;
        BasisKey k{};
        for (std::uint32_t w = 0; w < m_; ++w) k.set(w, digit(i, w));
        entries.push_back({k, amp_[i]});
    }
    return SparseState::from_entries(field_, m_, entries, cap);
}

}  // namespace qpsim
