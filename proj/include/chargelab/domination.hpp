#pragma once

#include <functional>
#include <vector>

#include "chargelab/charge.hpp"
#include "chargelab/subalgebra.hpp"

namespace chargelab {

/// μ₀ = Σ_{n≥1} 2^{-n} μ_n / (1 + ‖μ_n‖) over the given ordering of the
/// family; every member satisfies μ_n ≤ 2^n (1 + ‖μ_n‖) μ₀ exactly.
Charge control_measure(const ChargeFamily& family, const std::vector<std::size_t>& ordering);

/// Greedy (input-order) maximal pairwise-singular subfamily.
std::vector<Charge> maximal_orthogonal_subfamily(const ChargeFamily& family);

/// An x₀ ∈ F with x ∖ x₀ ∉ G for every x ∈ G, found by exhaustive scan;
/// smallest such element by atom count, ties broken by the algebra's
/// deterministic element order. Preconditions (G ⊆ F nonempty, 0 ∉ F,
/// F upward closed in the algebra) are validated by scan.
EPSet find_separating_element(const FiniteSubalgebra& algebra,
                              const std::function<bool(const EPSet&)>& F,
                              const std::function<bool(const EPSet&)>& G);

/// Decreasing τ* with lim_n ν(τ*(n)) = ‖ν‖ ≥ (1-t)‖ν‖ while every family
/// member's limit along τ* is exactly 0. Requires each member singular to ν.
ElementSequence singular_witness_sequence(const Charge& nu, const ChargeFamily& family,
                                          const Rational& t);

}  // namespace chargelab
