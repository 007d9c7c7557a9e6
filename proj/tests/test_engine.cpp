#include <random>

#include "doctest.h"
#include "qpsim/engine.hpp"
#include "qpsim/errors.hpp"
#include "support/quantum_helpers.hpp"

using namespace qpsim;

TEST_CASE("linear gate sequences implement |v> -> |Mv>") {
    PrimeField f(7);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        // random invertible 4x4 matrix
        Matrix m;
        for (;;) {
            m.assign(4, std::vector<Fel>(4));
            for (auto& row : m)
                for (auto& v : row) v = static_cast<Fel>(rng() % 7);
            try {
                matrix_inverse(f, m);
                break;
            } catch (const std::invalid_argument&) {
            }
        }
        std::vector<Fel> v(4);
        for (auto& x : v) x = static_cast<Fel>(rng() % 7);

        QuantumEngine eng(f);
        auto wires = eng.alloc(std::vector<WireInit>(4, WireInit::Zero));
        for (std::size_t i = 0; i < 4; ++i)
            if (v[i] != 0) eng.apply(GateKind::Shift, {wires[i]}, v[i]);
        eng.apply_linear(m, wires);
        auto want = matrix_apply(f, m, v);
        for (std::size_t i = 0; i < 4; ++i) CHECK(eng.measure(wires[i], rng) == want[i]);
    }
}

TEST_CASE("vandermonde inverse roundtrip") {
    PrimeField f(11);
    auto m = vandermonde(f, 7);
    auto mi = matrix_inverse(f, m);
    for (std::size_t i = 0; i < 7; ++i) {
        std::vector<Fel> e(7, 0);
        e[i] = 1;
        auto v = matrix_apply(f, m, e);
        auto back = matrix_apply(f, mi, v);
        CHECK(back == e);
    }
}

TEST_CASE("registers merge lazily and wire drops keep states compact") {
    PrimeField f(7);
    QuantumEngine eng(f);
    std::mt19937_64 rng(1);
    auto a = eng.alloc({WireInit::Zero, WireInit::UniformSum});
    auto b = eng.alloc({WireInit::Zero});
    CHECK(eng.register_size(a[0]) == 2);
    CHECK(eng.register_size(b[0]) == 1);
    eng.apply(GateKind::Sum, {a[1], b[0]});
    CHECK(eng.register_size(a[0]) == 3);
    Fel v1 = eng.measure_drop(b[0], rng);
    CHECK(eng.register_size(a[0]) == 2);
    Fel v2 = eng.measure(a[1], rng);
    CHECK(v1 == v2);  // SUM copied the uniform value
    CHECK_THROWS(eng.measure(b[0], rng));  // dead wire
}

TEST_CASE("tableau register converts to sparse on toffoli in auto mode") {
    PrimeField f(7);
    QuantumEngine eng(f);
    std::mt19937_64 rng(2);
    auto w = eng.alloc(std::vector<WireInit>(3, WireInit::Zero));
    eng.apply(GateKind::Shift, {w[0]}, 2);
    eng.apply(GateKind::Shift, {w[1]}, 3);
    eng.apply(GateKind::Shift, {w[2]}, 1);
    CHECK(eng.register_is_tableau(w[0]));
    eng.apply(GateKind::Toffoli, {w[0], w[1], w[2]});
    CHECK(!eng.register_is_tableau(w[0]));
    CHECK(eng.measure(w[2], rng) == 0);  // 1 + 6 mod 7

    QuantumEngine strict(f, {BackendKind::Tableau, 1000});
    auto w2 = strict.alloc(std::vector<WireInit>(3, WireInit::Zero));
    CHECK_THROWS_AS(strict.apply(GateKind::Toffoli, {w2[0], w2[1], w2[2]}), UnsupportedGate);
}

TEST_CASE("tableau to sparse conversion preserves the state") {
    PrimeField f(7);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        // random clifford prep on 3 wires, then convert and compare against
        // dense evolution
        std::vector<GateOp> circ;
        for (int i = 0; i < 15; ++i) {
            std::uint32_t w = rng() % 3;
            Fel c = 1 + rng() % 6;
            switch (rng() % 5) {
                case 0: circ.push_back(GateOp::shift(w, c)); break;
                case 1: circ.push_back(GateOp::phase_shift(w, c)); break;
                case 2: circ.push_back(GateOp::scalar_mul(w, c)); break;
                case 3: circ.push_back(GateOp::fourier(w, c)); break;
                case 4: circ.push_back(GateOp::sum(w, (w + 1 + rng() % 2) % 3, c)); break;
            }
        }
        StabilizerTableau tab(f, std::vector<WireInit>(3, WireInit::Zero));
        DenseState dense(f, std::vector<WireInit>(3, WireInit::Zero));
        for (const auto& g : circ) {
            tab.apply_gate(g);
            dense.apply_gate(g);
        }
        auto sparse = SparseState::from_tableau(tab, 100000);
        auto got = DenseState::from_sparse(sparse);
        // compare up to global phase via |<a|b>| = 1
        Amp ip = got.inner_product(dense);
        CHECK(std::abs(std::abs(ip) - 1.0) < 1e-9);
    }
}

TEST_CASE("fused sum_measure matches the stepwise path in distribution") {
    PrimeField f(7);
    // data register: uniform superposition on 2 wires; ancilla: uniform on 2
    // wires; fused measurement of the sum
    for (int trial = 0; trial < 30; ++trial) {
        std::mt19937_64 rng(100 + trial);
        QuantumEngine eng(f, {BackendKind::Sparse, 100000});
        auto d = eng.alloc({WireInit::UniformSum, WireInit::Zero});
        auto a = eng.alloc({WireInit::UniformSum, WireInit::UniformSum});
        eng.apply(GateKind::Sum, {d[0], d[1]});  // entangle data wires
        auto outcomes = eng.sum_measure({d[0], d[1]}, {a[0], a[1]}, 1, rng);
        // post-state: data wires hold the outcomes
        CHECK(eng.measure(d[0], rng) == outcomes[0]);
        CHECK(eng.measure(d[1], rng) == outcomes[1]);
        // ancilla wires satisfy a_i = outcome_i - original data value; the
        // two data wires were equal, so a[0] - a[1] = out0 - out1
        Fel a0 = eng.measure(a[0], rng), a1 = eng.measure(a[1], rng);
        CHECK(f.sub(a0, a1) == f.sub(outcomes[0], outcomes[1]));
    }
}

TEST_CASE("drop_deterministic and drop_uniform detach product wires") {
    PrimeField f(7);
    std::mt19937_64 rng(4);
    QuantumEngine eng(f);
    auto w = eng.alloc({WireInit::Zero, WireInit::UniformSum, WireInit::Zero});
    eng.apply(GateKind::Shift, {w[0]}, 5);
    CHECK(eng.drop_deterministic(w[0]) == 5);
    eng.drop_uniform(w[1]);
    CHECK(eng.register_size(w[2]) == 1);
    CHECK(eng.measure(w[2], rng) == 0);
}

TEST_CASE("local subgroup canonical forms detect equal and unequal reduced states") {
    PrimeField f(7);
    // Bell-like pair: reduced state on one wire is maximally mixed no
    // matter the other wire's basis
    QuantumEngine e1(f), e2(f);
    auto w1 = e1.alloc({WireInit::UniformSum, WireInit::Zero});
    e1.apply(GateKind::Sum, {w1[0], w1[1]});
    auto w2 = e2.alloc({WireInit::UniformSum, WireInit::Zero});
    e2.apply(GateKind::Sum, {w2[0], w2[1]});
    e2.apply(GateKind::Shift, {w2[1]}, 3);  // local op on the other wire
    auto g1 = e1.local_subgroup({w1[0]});
    auto g2 = e2.local_subgroup({w2[0]});
    CHECK(g1.size() == g2.size());
    for (std::size_t i = 0; i < g1.size(); ++i) {
        CHECK(g1[i].x == g2[i].x);
        CHECK(g1[i].z == g2[i].z);
        CHECK(g1[i].phase == g2[i].phase);
    }

    // different single-wire states give different canonical forms
    QuantumEngine e3(f);
    auto w3 = e3.alloc({WireInit::Zero});
    auto w4 = e3.alloc({WireInit::Zero});
    e3.apply(GateKind::Shift, {w4[0]}, 1);
    auto ga = e3.local_subgroup({w3[0]});
    auto gb = e3.local_subgroup({w4[0]});
    bool same = ga.size() == gb.size();
    if (same)
        for (std::size_t i = 0; i < ga.size(); ++i)
            same = same && ga[i].x == gb[i].x && ga[i].z == gb[i].z && ga[i].phase == gb[i].phase;
    CHECK(!same);
}

TEST_CASE("reduced density agrees between tableau and dense paths") {
    PrimeField f(7);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<GateOp> circ;
        for (int i = 0; i < 12; ++i) {
            std::uint32_t w = rng() % 3;
            Fel c = 1 + rng() % 6;
            switch (rng() % 5) {
                case 0: circ.push_back(GateOp::shift(w, c)); break;
                case 1: circ.push_back(GateOp::phase_shift(w, c)); break;
                case 2: circ.push_back(GateOp::scalar_mul(w, c)); break;
                case 3: circ.push_back(GateOp::fourier(w, c)); break;
                case 4: circ.push_back(GateOp::sum(w, (w + 1) % 3, c)); break;
            }
        }
        QuantumEngine tab_eng(f);
        QuantumEngine dense_eng(f, {BackendKind::Dense, 100000});
        auto wt = tab_eng.alloc(std::vector<WireInit>(3, WireInit::Zero));
        auto wd = dense_eng.alloc(std::vector<WireInit>(3, WireInit::Zero));
        for (const auto& g : circ) {
            std::vector<WireId> ws;
            for (std::size_t i = 0; i < g.arity(); ++i) ws.push_back(wt[g.wires[i]]);
            tab_eng.apply(g.kind, ws, g.scalar);
            ws.clear();
            for (std::size_t i = 0; i < g.arity(); ++i) ws.push_back(wd[g.wires[i]]);
            dense_eng.apply(g.kind, ws, g.scalar);
        }
        auto r1 = tab_eng.reduced_density({wt[1]});
        auto r2 = dense_eng.reduced_density({wd[1]});
        CHECK(qtest::mat_deviation(r1, r2) < 1e-9);
    }
}
