#pragma once

#include <cstdint>
#include <vector>

#include "qpsim/field.hpp"
#include "qpsim/gate.hpp"

namespace qpsim {

using Matrix = std::vector<std::vector<Fel>>;

/// n x n Vandermonde M[i][j] = (i+1)^j over Z_p; maps polynomial
/// coefficients to evaluations at 1..n.
Matrix vandermonde(const PrimeField& f, std::size_t n);

Matrix matrix_inverse(const PrimeField& f, Matrix m);

std::vector<Fel> matrix_apply(const PrimeField& f, const Matrix& m, const std::vector<Fel>& v);

/// Gate sequence implementing |v> -> |Mv> on the given wires, built from
/// Sum and ScalarMul ops. M must be invertible.
std::vector<GateOp> linear_gate_sequence(const PrimeField& f, const Matrix& m,
                                         const std::vector<std::uint32_t>& wires);

}  // namespace qpsim
