#pragma once

#include <string>
#include <vector>

#include "chargelab/charge.hpp"

namespace chargelab {

/// The set of codes of the finite prefixes of the word w_i = (0^i 1)^∞,
/// where a binary string s is coded as the integer with binary digits 1·s.
/// Branch sets are infinite but not eventually periodic; they carry their
/// own membership test and exact pairwise-intersection analysis.
class Branch {
  public:
    explicit Branch(int index);

    int index() const { return index_; }
    bool contains(long long n) const;
    /// Code of the length-j prefix of the word (j small enough to fit).
    long long element(std::size_t j) const;
    /// The first `count` elements, ascending.
    std::vector<long long> elements(std::size_t count) const;
    /// Elements below the bound, as a finite EPSet truncation.
    EPSet truncation(long long bound) const;

    std::string to_text() const;  // branch=<repeating word block>

    bool operator==(const Branch&) const = default;

  private:
    int index_ = 0;
};

/// Exact intersection of two branch sets: the codes of the common word
/// prefixes; its size is 1 + (length of the longest common prefix).
std::vector<long long> branch_intersection(const Branch& a, const Branch& b);

/// Whether a branch set meets an eventually periodic set only finitely
/// often; decided by cycle detection on codes modulo the period.
bool branch_ep_intersection_finite(const Branch& b, const EPSet& e);

/// k pairwise almost disjoint infinite subsets of ℕ (branches 0..k-1).
std::vector<Branch> almost_disjoint_family(int k);

/// σ(n) = B ∩ [n, ∞) for an infinite eventually periodic B.
ElementSequence tail_sequence(const EPSet& b);

/// lim_n ν(B ∩ [n, ∞)) along a branch set: its density part vanishes
/// (branch sets have upper density 0) and its atoms are eventually excluded,
/// so the limit is exactly 0 for every representable charge.
Rational branch_tail_limit(const Charge& nu, const Branch& b);

struct CensusReport {
    std::vector<std::size_t> heavy;  // indices with limsup >= eps
    std::vector<Rational> limsups;
    Rational total;  // Σ_α limsup_n ν(σ_α(n))
    Rational bound;  // ‖ν‖
};

/// Census of {α : limsup_n ν(σ_α(n)) ≥ eps} over a pairwise quasi-disjoint
/// family of decreasing sequences; enforces Σ_α limsup ≤ ‖ν‖ and
/// |heavy| ≤ floor(‖ν‖/eps).
CensusReport quasi_disjoint_census(const std::vector<ElementSequence>& family,
                                   const Charge& nu, const Rational& eps);

/// Every listed element receives positive mass from the charge family.
bool cc_predicate(const std::vector<EPSet>& elements, const ChargeFamily& charges);

}  // namespace chargelab
