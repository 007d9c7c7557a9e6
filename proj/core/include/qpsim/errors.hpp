#pragma once

#include <stdexcept>
#include <string>

namespace qpsim {

struct InconsistentShares : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedGate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SupportOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OwnershipViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CodeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigRejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecodeFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qpsim
