#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chargelab/charge.hpp"
#include "chargelab/families.hpp"
#include "chargelab/subalgebra.hpp"

namespace chargelab {

/// A disjoint sequence of coordinates υ(0), υ(1), … over ℕ.
/// υ(E) = ∪_{k∈E} υ(k) stays representable when E is eventually periodic
/// (Singletons, Blocks, ExplicitFinite) or finite (all variants).
class DisjointSeqGen {
  public:
    enum class Kind { Singletons, Blocks, GeometricBlocks, ExplicitFinite };

    static DisjointSeqGen singletons();
    static DisjointSeqGen blocks(long long width);
    static DisjointSeqGen geometric_blocks();
    static DisjointSeqGen explicit_finite(std::vector<EPSet> coords);

    Kind kind() const { return kind_; }
    long long width() const { return width_; }
    const std::vector<EPSet>& coords() const { return coords_; }

    EPSet coordinate(long long k) const;
    bool representable(const EPSet& e) const;
    EPSet union_over(const EPSet& e) const;

    std::string name() const;

  private:
    DisjointSeqGen() = default;
    Kind kind_ = Kind::Singletons;
    long long width_ = 1;
    std::vector<EPSet> coords_;
};

/// m_*(B) relative to a finite subalgebra: max{m(A) : A ∈ sub, A ⊆ B}.
Rational inner_measure(const Charge& m, const EPSet& b, const FiniteSubalgebra& sub);

/// ψ(E) = sup_μ μ(υ(E)); rejects (variant, E) pairs with unrepresentable υ(E).
Rational psi_functional(const ChargeFamily& family, const DisjointSeqGen& gen,
                        const EPSet& e);

struct UsaWitness {
    std::size_t gen_index = 0;
    EPSet indices;  // infinite index set with sup_μ μ(υ(k)) ≥ eps throughout
    Rational eps;
};

struct UsaVerdict {
    bool pass = false;
    std::string certificate;  // set on Pass
    std::optional<UsaWitness> witness;
    /// Exact coordinate index beyond which sup_μ μ(υ(k)) vanishes for every
    /// listed generator (Pass for finite families only).
    long long vanish_from = 0;

    std::string to_text() const;
};

/// Uniform strong additivity along the given generators: sound on Fail
/// (witness re-verifiable by direct evaluation), certificate-based on Pass.
UsaVerdict usa_test(const ChargeFamily& family, const std::vector<DisjointSeqGen>& gens);

enum class WcKind { NormUnbounded, NotUSA, CompatibleWithWeakCompactness };

struct WcVerdict {
    WcKind kind = WcKind::CompatibleWithWeakCompactness;
    std::optional<UsaWitness> witness;
    std::string certificate;

    std::string to_text() const;
};

WcVerdict weak_compactness_check(const ChargeFamily& family,
                                 const std::vector<DisjointSeqGen>& gens);

/// limsup_n ψ(B ∩ [n, ∞)) along a branch set; exact for every combination
/// except density-carrying families with GeometricBlocks, which are rejected.
Rational branch_psi_limsup(const ChargeFamily& family, const DisjointSeqGen& gen,
                           const Branch& b);

struct BranchSearchResult {
    int branch_index = 0;
    Rational psi_limsup;
};

/// Search heuristic: minimize the ψ-limsup over branches 0..k-1 (k ≤ 16),
/// ties broken by the lowest branch index.
BranchSearchResult minimize_psi_over_branches(const ChargeFamily& family,
                                              const DisjointSeqGen& gen, int k);

}  // namespace chargelab
