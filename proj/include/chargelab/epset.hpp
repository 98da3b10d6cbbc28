#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chargelab/rational.hpp"

namespace chargelab {

enum class UniverseKind { Finite, Naturals };

struct Universe {
    UniverseKind kind = UniverseKind::Naturals;
    std::size_t size = 0;  // meaningful for Finite only

    static Universe naturals() { return {UniverseKind::Naturals, 0}; }
    static Universe finite(std::size_t n) { return {UniverseKind::Finite, n}; }
    bool operator==(const Universe&) const = default;
    auto operator<=>(const Universe&) const = default;
};

/// Period bound for Boolean operation results; overridable through the
/// CHARGE_LAB_PERIOD_LIMIT environment variable.
long long period_limit();

/// An eventually periodic subset of the naturals, or a bitset over a finite
/// universe. Always held in canonical form (minimal prefix, minimal period),
/// so structural equality is set equality.
class EPSet {
  public:
    EPSet() = default;  // empty subset of Naturals

    static EPSet empty(Universe u);
    static EPSet full(Universe u);
    static EPSet finite_universe(std::size_t n, std::vector<bool> bits);
    static EPSet naturals(std::vector<bool> prefix_bits, long long period,
                          std::vector<bool> pattern);
    static EPSet residue_class(long long r, long long m);
    static EPSet residues(const std::vector<long long>& rs, long long m);
    static EPSet from_points(const std::vector<long long>& pts);
    static EPSet singleton(long long k) { return from_points({k}); }
    static EPSet ray(long long a);                 // [a, inf)
    static EPSet range(long long a, long long b);  // [a, b)
    static EPSet evens() { return residue_class(0, 2); }
    static EPSet odds() { return residue_class(1, 2); }

    Universe universe() const { return universe_; }
    bool contains(long long k) const;
    bool is_empty() const;
    bool is_full() const;
    bool is_finite() const;
    bool is_infinite() const { return !is_finite(); }
    long long period() const { return period_; }
    long long prefix_len() const { return static_cast<long long>(prefix_.size()); }

    /// Elements of a finite set, ascending. Throws if the set is infinite.
    std::vector<long long> finite_elements() const;
    std::optional<long long> min_element() const;
    std::optional<long long> max_element_if_finite() const;
    std::vector<long long> elements_below(long long n) const;

    /// |pattern| / period. Naturals universe only.
    Rational density() const;

    EPSet complement() const;
    friend EPSet meet(const EPSet& a, const EPSet& b);
    friend EPSet join(const EPSet& a, const EPSet& b);
    friend EPSet difference(const EPSet& a, const EPSet& b);
    friend EPSet sym_diff(const EPSet& a, const EPSet& b);

    bool subset_of(const EPSet& other) const;
    bool disjoint_from(const EPSet& other) const;

    /// Prefix content replaced by the periodic rule; the mod-finite class
    /// representative.
    EPSet periodic_core() const;
    bool equal_mod_finite(const EPSet& other) const;

    bool operator==(const EPSet&) const = default;
    std::strong_ordering operator<=>(const EPSet&) const = default;

    std::string to_text() const;
    static EPSet parse(const std::string& text);

  private:
    void canonicalize();
    static void check_same_universe(const EPSet& a, const EPSet& b);

    Universe universe_ = Universe::naturals();
    // Naturals representation
    std::vector<bool> prefix_;   // membership of 0..prefix_len-1
    long long period_ = 1;
    std::vector<bool> pattern_{false};  // membership of k >= prefix_len via k mod period
    // Finite representation
    std::vector<bool> bits_;
};

EPSet meet(const EPSet& a, const EPSet& b);
EPSet join(const EPSet& a, const EPSet& b);
EPSet difference(const EPSet& a, const EPSet& b);
EPSet sym_diff(const EPSet& a, const EPSet& b);

}  // namespace chargelab
