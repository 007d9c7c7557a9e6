#include "qpsim/tree_check.hpp"

#include <algorithm>

namespace qpsim {

TwoGoodReport two_good_check(const std::vector<Word>& tree, const ReedSolomonCode& code,
                             const CheaterSets& sets, const std::set<std::size_t>& cheaters) {
    const std::size_t n = code.n();
    TwoGoodReport rep;
    rep.branch_values.assign(n, 0);
    if (tree.size() != n) {
        rep.ok = false;
        rep.detail = "tree must have n branches";
        return rep;
    }

    // Property 1: for honest i, all apparent cheaters are real cheaters.
    for (std::size_t i = 1; i <= n; ++i) {
        if (cheaters.count(i)) continue;
        for (std::size_t j : sets.B_i[i]) {
            if (!cheaters.count(j)) {
                rep.ok = false;
                rep.failed_property = 1;
                rep.branch = i;
                rep.detail = "honest branch " + std::to_string(i) + " blames honest leaf " +
                             std::to_string(j);
                return rep;
            }
        }
    }

    // Property 2: each branch outside B lies in V_{B_i ∪ C}; the honest
    // leaves outside B_i determine a unique value a_i.
    for (std::size_t i = 1; i <= n; ++i) {
        if (sets.B.count(i)) continue;
        std::set<std::size_t> holes = sets.B_i[i];
        holes.insert(cheaters.begin(), cheaters.end());
        if (!in_neighborhood(code, tree[i - 1], holes)) {
            rep.ok = false;
            rep.failed_property = 2;
            rep.branch = i;
            rep.detail = "branch " + std::to_string(i) + " inconsistent outside B_i ∪ C";
            return rep;
        }
        std::set<std::size_t> good;
        for (std::size_t j = 1; j <= n; ++j)
            if (!holes.count(j)) good.insert(j);
        rep.branch_values[i - 1] = erasure_interpolate(code, tree[i - 1], good);
    }

    // Property 3: the branch values form a word in V_B. Positions in B are
    // erased, so their entries are irrelevant.
    Word root(n, 0);
    for (std::size_t i = 1; i <= n; ++i)
        if (!sets.B.count(i)) root[i - 1] = rep.branch_values[i - 1];
    if (!in_neighborhood(code, root, sets.B)) {
        rep.ok = false;
        rep.failed_property = 3;
        rep.detail = "interpolated branch values not in V_B";
        return rep;
    }
    return rep;
}

}  // namespace qpsim
