#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chargelab/epset.hpp"

namespace chargelab {

/// Coordinate description for the periodic part of a sequence. At position n
/// the coordinate is
///     (below ∩ [0, n+lo))  ∪  ⋃_i (window[i] ∩ {n+lo+i})  ∪  (above ∩ [n+lo+|window|, ∞)),
/// clipped at 0. With an empty window and below == above this is a constant
/// coordinate; with below == ∅, empty window, lo == 0 it is the tail B ∩ [n, ∞).
struct CoordTemplate {
    EPSet below;
    long long lo = 0;
    std::vector<EPSet> window;
    EPSet above;

    bool operator==(const CoordTemplate&) const = default;
};

/// A sequence of algebra elements with an eventually periodic description:
/// explicit coordinates 0..base-1 followed by cyclic coordinate templates.
/// All templates of one sequence share lo and window size. Equality and the
/// mod-finite (quotient) relations are decided exactly.
class ElementSequence {
  public:
    ElementSequence() = default;

    static ElementSequence constant(EPSet a);
    static ElementSequence periodic(std::vector<EPSet> prefix, std::vector<EPSet> cycle);
    static ElementSequence tails(EPSet base);  // σ(n) = base ∩ [n, ∞)
    static ElementSequence zero(Universe u) { return constant(EPSet::empty(u)); }
    static ElementSequence one(Universe u) { return constant(EPSet::full(u)); }

    Universe universe() const { return universe_; }
    EPSet at(long long n) const;

    friend ElementSequence seq_meet(const ElementSequence& a, const ElementSequence& b);
    friend ElementSequence seq_join(const ElementSequence& a, const ElementSequence& b);
    friend ElementSequence seq_diff(const ElementSequence& a, const ElementSequence& b);
    friend ElementSequence seq_sym_diff(const ElementSequence& a, const ElementSequence& b);
    ElementSequence complement() const;

    /// σ'(n) = σ(n+1).
    ElementSequence shift_left() const;

    /// op-fold of σ(from), …, σ(n); coordinates before `from` are the fold
    /// identity (full set for meet, empty set for join).
    ElementSequence cumulative_meet(long long from = 0) const;
    ElementSequence cumulative_join(long long from = 0) const;

    bool is_identically_empty() const;
    /// Only finitely many nonzero coordinates (the Seq₀ ideal).
    bool is_zero_class() const;
    bool equals(const ElementSequence& other) const;
    bool same_class(const ElementSequence& other) const;
    bool pointwise_leq(const ElementSequence& other) const;
    bool class_leq(const ElementSequence& other) const;
    bool is_decreasing() const;
    bool is_increasing() const;

    // representation access for exact evaluation analyses
    long long base() const { return static_cast<long long>(prefix_.size()); }
    std::size_t cycle_length() const { return cycle_.size(); }
    const CoordTemplate& slot(std::size_t r) const { return cycle_[r]; }
    const CoordTemplate& slot_at(long long n) const;
    long long lo() const { return cycle_.front().lo; }
    long long window_size() const { return static_cast<long long>(cycle_.front().window.size()); }
    /// First n from which coordinates follow their templates with every point
    /// of interest below the diagonal zone (callers pass the largest atom
    /// point they care about).
    long long stable_from(long long max_point) const;
    /// Sound threshold N0 with σ(n) = ∅ for n ≥ N0, if one exists.
    std::optional<long long> eventually_empty_threshold() const;

    /// Copy with the first coordinates replaced by explicit values.
    ElementSequence with_coords_overridden(std::vector<EPSet> coords) const;

    std::string to_text() const;
    static ElementSequence parse(const std::string& text);

  private:
    void normalize();
    static void align(ElementSequence& a, ElementSequence& b);
    static ElementSequence combine(const ElementSequence& a, const ElementSequence& b,
                                   EPSet (*op)(const EPSet&, const EPSet&));
    static ElementSequence cumulative(const ElementSequence& in, long long from, bool meet_op);

    Universe universe_ = Universe::naturals();
    std::vector<EPSet> prefix_;
    std::vector<CoordTemplate> cycle_;  // slot r governs n = base + r (mod L)
};

ElementSequence seq_meet(const ElementSequence& a, const ElementSequence& b);
ElementSequence seq_join(const ElementSequence& a, const ElementSequence& b);
ElementSequence seq_diff(const ElementSequence& a, const ElementSequence& b);
ElementSequence seq_sym_diff(const ElementSequence& a, const ElementSequence& b);

bool is_quasi_disjoint(const ElementSequence& s, const ElementSequence& t);

/// Coordinatewise upper and lower bounds for a finite family, valid mod
/// finitely many coordinates: upper(n) = ∪_{j≤n} σ_j(n), lower(n) = ∩_{j≤n} σ_j(n).
struct SeqBounds {
    ElementSequence upper;
    ElementSequence lower;
};
SeqBounds bounds_mod_finite(const std::vector<ElementSequence>& family);

enum class MonotoneDirection { Increasing, Decreasing };
ElementSequence make_monotone(const ElementSequence& s, MonotoneDirection dir);

/// Class of a sequence modulo finitely many coordinate changes.
class QuotientSeq {
  public:
    QuotientSeq() = default;
    explicit QuotientSeq(ElementSequence rep) : rep_(std::move(rep)) {}

    const ElementSequence& representative() const { return rep_; }
    bool is_zero() const { return rep_.is_zero_class(); }
    bool operator==(const QuotientSeq& other) const { return rep_.same_class(other.rep_); }
    bool leq(const QuotientSeq& other) const { return rep_.class_leq(other.rep_); }

    friend QuotientSeq operator&(const QuotientSeq& a, const QuotientSeq& b) {
        return QuotientSeq(seq_meet(a.rep_, b.rep_));
    }
    friend QuotientSeq operator|(const QuotientSeq& a, const QuotientSeq& b) {
        return QuotientSeq(seq_join(a.rep_, b.rep_));
    }
    friend QuotientSeq operator-(const QuotientSeq& a, const QuotientSeq& b) {
        return QuotientSeq(seq_diff(a.rep_, b.rep_));
    }

  private:
    ElementSequence rep_;
};

}  // namespace chargelab
