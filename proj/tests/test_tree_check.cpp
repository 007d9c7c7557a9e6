#include <random>

#include "doctest.h"
#include "qpsim/tree_check.hpp"

using namespace qpsim;

namespace {

// Honest two-level tree: top codeword for `secret`, each branch value
// re-encoded with fresh randomness.
std::vector<Word> honest_tree(const ReedSolomonCode& code, Fel secret, std::mt19937_64& rng) {
    const PrimeField& f = code.field();
    auto rand_vec = [&](std::size_t k) {
        std::vector<Fel> r(k);
        for (auto& x : r) x = static_cast<Fel>(rng() % f.p());
        return r;
    };
    Word top = rs_encode(code, secret, rand_vec(code.delta()));
    std::vector<Word> tree;
    for (std::size_t i = 0; i < code.n(); ++i)
        tree.push_back(rs_encode(code, top[i], rand_vec(code.delta())));
    return tree;
}

}  // namespace

TEST_CASE("2-good: clean sharing passes with empty sets") {
    ReedSolomonCode code(PrimeField(7), 5, 2, RsVariant::V);
    std::mt19937_64 rng(1);
    auto tree = honest_tree(code, 3, rng);
    CheaterSets sets(5);
    auto rep = two_good_check(tree, code, sets, {});
    CHECK(rep.ok);
}

TEST_CASE("2-good: cheater column garbage is allowed by property 2") {
    ReedSolomonCode code(PrimeField(7), 5, 2, RsVariant::V);
    std::mt19937_64 rng(2);
    auto tree = honest_tree(code, 3, rng);
    // cheater c = 4 replaces all its leaves (column 4) with garbage
    for (std::size_t i = 0; i < 5; ++i) tree[i][3] = static_cast<Fel>(rng() % 7);
    CheaterSets sets(5);
    auto rep = two_good_check(tree, code, sets, {4});
    CHECK(rep.ok);
}

TEST_CASE("2-good: property 1 catches honest branches blaming honest leaves") {
    ReedSolomonCode code(PrimeField(7), 5, 2, RsVariant::V);
    std::mt19937_64 rng(3);
    auto tree = honest_tree(code, 0, rng);
    CheaterSets sets(5);
    sets.B_i[2].insert(3);  // branch 2 honest, leaf 3 honest
    auto rep = two_good_check(tree, code, sets, {4});
    CHECK(!rep.ok);
    CHECK(rep.failed_property == 1);
}

TEST_CASE("2-good: property 3 catches an inconsistent branch value") {
    ReedSolomonCode code(PrimeField(7), 5, 2, RsVariant::V);
    std::mt19937_64 rng(4);
    auto tree = honest_tree(code, 3, rng);
    // branch 1 honestly re-encodes a wrong value: all its leaves shift,
    // so the branch word is still a codeword but interpolates elsewhere
    std::vector<Fel> r(2, 0);
    tree[0] = rs_encode(code, code.field().add(erasure_interpolate(code, tree[0], {1, 2, 3}), 2), r);
    CheaterSets sets(5);
    auto rep = two_good_check(tree, code, sets, {});
    CHECK(!rep.ok);
    CHECK(rep.failed_property == 3);
}

TEST_CASE("2-good: property 2 catches a non-codeword branch") {
    ReedSolomonCode code(PrimeField(7), 5, 2, RsVariant::V);
    std::mt19937_64 rng(5);
    auto tree = honest_tree(code, 1, rng);
    tree[2][0] = code.field().add(tree[2][0], 1);
    tree[2][1] = code.field().add(tree[2][1], 3);  // two honest leaves off
    CheaterSets sets(5);
    auto rep = two_good_check(tree, code, sets, {});
    CHECK(!rep.ok);
    CHECK(rep.failed_property == 2);
    CHECK(rep.branch == 3);
}

TEST_CASE("2-good works against the scaled W code") {
    PrimeField f(7);
    ReedSolomonCode w_code(f, 5, 2, RsVariant::W);
    auto d = dual_constants(f, 5);
    std::mt19937_64 rng(6);
    // top word in W: scaled values of a degree-<=2 polynomial
    ReedSolomonCode plain(f, 5, 2, RsVariant::V);
    Word top_plain = rs_encode(plain, 4, {1, 1});
    std::vector<Word> tree;
    for (std::size_t i = 0; i < 5; ++i) {
        // branch i encodes the scaled top component d_i * top_plain[i]
        Fel val = f.mul(d[i], top_plain[i]);
        Word branch_plain = rs_encode(plain, val, {static_cast<Fel>(rng() % 7), 2});
        Word branch(5);
        for (std::size_t j = 0; j < 5; ++j) branch[j] = f.mul(d[j], branch_plain[j]);
        tree.push_back(branch);
    }
    CheaterSets sets(5);
    auto rep = two_good_check(tree, w_code, sets, {});
    CHECK(rep.ok);
}
