#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpsim/css.hpp"
#include "qpsim/network.hpp"

namespace qpsim {

/// What an honest dealer would put in a prepared system.
enum class SystemKind { Data, UniformSum, Zero };

/// Behaviour of the corrupted coalition. Hooks fire at fixed protocol
/// points with a context restricted to corrupted players' wires; the
/// default implementation of every hook is honest behaviour.
class AdversaryStrategy {
public:
    virtual ~AdversaryStrategy() = default;
    virtual std::string name() const = 0;

    /// Corrupt dealer: produce system (l, m) yourself instead of the honest
    /// preparation. Return false to fall back to honest preparation.
    virtual bool dealer_prepare_system(AdversaryContext&, std::size_t /*l*/, std::size_t /*m*/,
                                       SystemKind /*kind*/, const CssCode& /*code*/,
                                       Player /*dealer*/, CodeBlock& /*out*/) {
        return false;
    }

    /// Corrupt player `pl` just re-encoded component (l, m) into `branch`.
    virtual void on_reencode(AdversaryContext&, Player /*pl*/, std::size_t /*l*/,
                             std::size_t /*m*/, const CodeBlock& /*branch*/) {}

    /// Corrupt player about to measure a challenge leaf.
    virtual void on_pre_measure(AdversaryContext&, Player /*pl*/, WireId /*leaf*/) {}

    /// The value a corrupt player broadcasts in place of its measurement.
    virtual Fel on_broadcast_value(AdversaryContext&, Player /*pl*/, Fel true_value) {
        return true_value;
    }

    /// Window between an accepted sharing and reconstruction.
    virtual void on_post_sharing(AdversaryContext&, const std::vector<WireId>& /*held*/) {}

    /// Before each mpqc computation gate.
    virtual void on_mpqc_round(AdversaryContext&, const std::vector<WireId>& /*held*/) {}
};

/// Stable registry: honest, pauli_tamper, bad_branch_dealer,
/// wrong_state_dealer, lying_broadcaster, clifford_wire_attack.
std::unique_ptr<AdversaryStrategy> make_strategy(const std::string& name,
                                                 const nlohmann::json& params = {});

std::vector<std::string> strategy_names();

}  // namespace qpsim
