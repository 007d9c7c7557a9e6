#pragma once

#include <set>
#include <string>
#include <vector>

#include "qpsim/rs_code.hpp"

namespace qpsim {

/// Cheater bookkeeping for a two-level sharing: B holds branch indices
/// blamed on the dealer, B_i holds leaf positions blamed inside branch i.
/// All sets are 1-based player indices and only ever grow.
struct CheaterSets {
    std::set<std::size_t> B;
    std::vector<std::set<std::size_t>> B_i;  // index 0 unused; B_i[i] for branch i

    explicit CheaterSets(std::size_t n) : B_i(n + 1) {}
};

struct TwoGoodReport {
    bool ok = true;
    int failed_property = 0;        // 1..3, or 0 when ok
    std::size_t branch = 0;         // offending branch, when applicable
    std::string detail;
    std::vector<Fel> branch_values;  // a_i for branches not in B (others zero)
};

/// Consistency predicate for an n x n tree of classical symbols against
/// the given code: (1) apparent cheaters of honest branches are real
/// cheaters, (2) each branch outside B restricted to honest leaves outside
/// B_i agrees with one codeword, (3) the interpolated branch values agree
/// with one codeword outside B. tree[i][j] is leaf j+1 of branch i+1.
TwoGoodReport two_good_check(const std::vector<Word>& tree, const ReedSolomonCode& code,
                             const CheaterSets& sets, const std::set<std::size_t>& cheaters);

}  // namespace qpsim
