#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chargelab/epset.hpp"
#include "chargelab/rational.hpp"
#include "chargelab/sequence.hpp"

namespace chargelab {

/// One density component: coeff · natural_density(· ∩ carrier).
struct DensityComponent {
    Rational coeff;
    EPSet carrier;

    bool operator==(const DensityComponent&) const = default;
};

/// A nonnegative finitely additive measure on the representable algebra:
/// finitely many point atoms plus finitely many density components. Held in
/// canonical form — carriers are disjoint periodic residue sets grouped by
/// distinct coefficient — so structural equality is equality of charges and
/// addition is exact.
class Charge {
  public:
    Charge() = default;  // zero charge on Naturals
    static Charge zero(Universe u);
    static Charge point_mass(long long x, Rational w,
                             Universe u = Universe::naturals());
    static Charge density(Rational coeff, EPSet carrier);
    static Charge from_parts(std::map<long long, Rational> atoms,
                             std::vector<DensityComponent> densities,
                             Universe u = Universe::naturals());

    Universe universe() const { return universe_; }
    const std::map<long long, Rational>& atoms() const { return atoms_; }
    const std::vector<DensityComponent>& densities() const { return densities_; }

    Rational evaluate(const EPSet& a) const;
    Rational norm() const;
    bool is_zero() const { return atoms_.empty() && densities_.empty(); }

    /// Largest atom point, or -1 when purely non-atomic.
    long long max_atom_point() const;
    /// The union of the density carriers (a periodic set; empty if none).
    EPSet carrier_union() const;
    Charge atomic_part() const;
    Charge density_part() const;
    /// Value of the atomic part alone.
    Rational atom_mass(const EPSet& a) const;
    /// Value of the density part alone.
    Rational density_mass(const EPSet& a) const;
    /// Restriction μ(· ∩ a), again a Charge.
    Charge restrict(const EPSet& a) const;

    friend Charge operator+(const Charge& a, const Charge& b);
    friend Charge operator*(const Rational& c, const Charge& m);
    bool operator==(const Charge&) const = default;

    std::string to_text() const;
    static Charge parse(const std::string& text);

  private:
    void canonicalize();

    Universe universe_ = Universe::naturals();
    std::map<long long, Rational> atoms_;
    std::vector<DensityComponent> densities_;
};

/// A family of charges: either an explicit finite list or the point masses
/// {δ_n : n ∈ support}.
class ChargeFamily {
  public:
    static ChargeFamily finite(std::vector<Charge> members);
    static ChargeFamily point_masses(EPSet support);

    bool is_point_masses() const { return point_masses_.has_value(); }
    const std::vector<Charge>& members() const { return members_; }
    const EPSet& support() const { return *point_masses_; }
    Universe universe() const;

    /// sup_{μ ∈ M} μ(a).
    Rational sup_evaluate(const EPSet& a) const;
    Rational norm_bound() const;

  private:
    ChargeFamily() = default;
    std::vector<Charge> members_;
    std::optional<EPSet> point_masses_;
};

/// Outcome of the domination test: on failure, a decreasing-cost witness
/// sequence a_n with nu(a_n) → 0 while mu(a_n) ≥ eps for every n.
struct DominationResult {
    bool dominated = false;
    std::optional<ElementSequence> witness;
    Rational eps;
};

DominationResult is_absolutely_continuous(const Charge& mu, const Charge& nu);

struct LebesgueDecomposition {
    Charge absolutely_continuous;
    Charge singular;
    EPSet witness;  // nu(witness) = 0 and singular(witnessᶜ) = 0, exactly
};

LebesgueDecomposition lebesgue_decompose(const Charge& mu, const Charge& nu);

bool is_singular(const Charge& mu, const Charge& nu);

/// λ(h) = lim_k μ(σ(k) ∩ h) for decreasing σ; rejects non-decreasing input.
Charge limit_along_decreasing(const Charge& mu, const ElementSequence& sigma);

/// m̄(σ̄) = limsup_n m(σ(n)); exact via the eventual periodic regime.
Rational limsup_functional(const Charge& m, const ElementSequence& s);

/// True iff σ is eventually ν-constant — equivalent, for this class, to
/// lim_n 2^n · sup_{k>n} ν(σ(n) △ σ(k)) = 0. On failure the returned index
/// witnesses a pair of slots with ν-distinct coordinates.
struct ExpRateResult {
    bool member = false;
    std::optional<long long> witness_index;
};
ExpRateResult exp_rate_membership(const ElementSequence& s, const Charge& nu);

/// Lemma-Sn sandwich: τ(n) = ∩_{N≤j≤n} σ(j), υ(n) = ∪_{N≤j≤n} σ(j) with N
/// minimal such that 2^{-N} ≤ eps/2 and sup_{k>n} ν(σ(n)△σ(k)) < 2^{-n}
/// for every n ≥ N.
struct SandwichResult {
    ElementSequence tau;
    ElementSequence ups;
    long long start = 0;  // the chosen N
};
SandwichResult sandwich(const ElementSequence& s, const Charge& nu, const Rational& eps);

}  // namespace chargelab
