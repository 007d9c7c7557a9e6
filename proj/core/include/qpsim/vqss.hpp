#pragma once

#include <optional>
#include <vector>

#include "qpsim/adversary.hpp"
#include "qpsim/css.hpp"
#include "qpsim/network.hpp"
#include "qpsim/tree_check.hpp"

namespace qpsim {

/// What the dealer proves about the shared state, on top of consistency.
enum class ProvedKind { None, Zero, UniformSum };

/// The surviving two-level tree: branch i's block S_{0,0,i}, leaf j of
/// branch i held by player j.
struct ShareTree {
    std::vector<CodeBlock> branches;
};

struct VqssOutcome {
    bool accepted = false;
    bool dealer_failed = false;
    ShareTree tree;
    CheaterSets sets;
    Player dealer = 0;
    ProvedKind proved = ProvedKind::None;

    explicit VqssOutcome(std::size_t n) : sets(n) {}
};

/// Protocol 1: sharing plus cut-and-choose verification in both bases.
/// For ProvedKind::None the dealer shares the state on `input` (a wire it
/// owns); proved variants ignore `input` and share |0> or the uniform
/// superposition with the extra top-level value checks. `shared_sets`
/// accumulates cheater sets across sharings by the same dealer.
VqssOutcome vqss_share(NetworkSim& net, Player dealer, WireId input, AdversaryStrategy& strat,
                       ProvedKind proved = ProvedKind::None, CheaterSets* shared_sets = nullptr);

struct ChallengeUpdate {
    bool dealer_failed = false;
    std::optional<Fel> root_value;
};

/// Classical bookkeeping for one challenge: decode every branch word,
/// grow B_i from error supports, push undecodable or over-budget branches
/// into B, then decode the interpolated root word and grow B again.
ChallengeUpdate update_cheater_sets(const std::vector<Word>& branch_words,
                                    const ReedSolomonCode& code, std::size_t t, CheaterSets& sets,
                                    NetworkSim* log = nullptr);

/// Protocol 2: every player sends its leaves to the receiver, who searches
/// per-branch cheater supersets, recovers branch qupits, and interpolates
/// across branches. Residual failures fall back to |0> with a fault log.
WireId vqss_reconstruct(NetworkSim& net, VqssOutcome& sharing, Player receiver,
                        AdversaryStrategy& strat);

/// The ideal interpolation operator for 2-good trees: acts only on chosen
/// honest players' wires (test and analysis tool).
WireId ideal_interpolation_tree(NetworkSim& net, const VqssOutcome& sharing);

/// Test-only oracle: measure a copy of everything in the computational
/// basis and check 2-goodness against V; same in the Fourier basis
/// against W.
bool two_good_quantum_check(const NetworkSim& net, const VqssOutcome& sharing);

/// All live leaf wires of the surviving tree held by the given player.
std::vector<WireId> held_tree_wires(const NetworkSim& net, const VqssOutcome& sharing, Player pl);

}  // namespace qpsim
