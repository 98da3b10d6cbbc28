#include "chargelab/domination.hpp"

#include <algorithm>
#include <stdexcept>

namespace chargelab {

Charge control_measure(const ChargeFamily& family, const std::vector<std::size_t>& ordering) {
    if (family.is_point_masses()) {
        throw std::invalid_argument("control_measure needs a finite family");
    }
    const auto& members = family.members();
    std::vector<std::size_t> order = ordering;
    if (order.empty()) {
        order.resize(members.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    }
    if (order.size() != members.size()) {
        throw std::invalid_argument("ordering size differs from family size");
    }
    std::vector<bool> seen(members.size(), false);
    for (std::size_t i : order) {
        if (i >= members.size() || seen[i]) {
            throw std::invalid_argument("ordering is not a permutation of the family");
        }
        seen[i] = true;
    }
    Charge mu0 = Charge::zero(family.universe());
    unsigned n = 1;
    for (std::size_t i : order) {
        const Charge& m = members[i];
        mu0 = mu0 + (pow2_inv(n) / (Rational(1) + m.norm())) * m;
        ++n;
    }
    return mu0;
}

std::vector<Charge> maximal_orthogonal_subfamily(const ChargeFamily& family) {
    if (family.is_point_masses()) {
        throw std::invalid_argument("maximal_orthogonal_subfamily needs a finite family");
    }
    std::vector<Charge> out;
    for (const Charge& m : family.members()) {
        if (m.is_zero()) {
            throw std::invalid_argument("family members must be nonzero");
        }
        bool orthogonal = std::all_of(out.begin(), out.end(), [&](const Charge& kept) {
            return is_singular(m, kept);
        });
        if (orthogonal) out.push_back(m);
    }
    return out;
}

EPSet find_separating_element(const FiniteSubalgebra& algebra,
                              const std::function<bool(const EPSet&)>& F,
                              const std::function<bool(const EPSet&)>& G) {
    const auto& elems = algebra.elements();
    const EPSet zero = EPSet::empty(algebra.universe());
    bool g_nonempty = false;
    for (const EPSet& x : elems) {
        if (G(x) && !F(x)) {
            throw std::invalid_argument("G is not contained in F: offending element " +
                                        x.to_text());
        }
        if (G(x)) g_nonempty = true;
    }
    if (!g_nonempty) throw std::invalid_argument("G is empty");
    if (F(zero)) throw std::invalid_argument("F contains 0");
    for (const EPSet& x : elems) {
        if (!F(x)) continue;
        for (const EPSet& y : elems) {
            if (x.subset_of(y) && !F(y)) {
                throw std::invalid_argument("F is not upward closed: offending element " +
                                            y.to_text());
            }
        }
    }

    auto atom_count = [&](const EPSet& x) {
        std::size_t c = 0;
        for (const EPSet& a : algebra.atoms()) {
            if (a.subset_of(x)) ++c;
        }
        return c;
    };
    const EPSet* best = nullptr;
    std::size_t best_count = 0;
    for (const EPSet& x0 : elems) {
        if (!F(x0)) continue;
        bool separates = true;
        for (const EPSet& x : elems) {
            if (G(x) && G(difference(x, x0))) {
                separates = false;
                break;
            }
        }
        if (!separates) continue;
        std::size_t c = atom_count(x0);
        if (!best || c < best_count) {
            best = &x0;
            best_count = c;
        }
    }
    if (!best) {
        throw std::logic_error("no separating element exists; F cannot contain 1");
    }
    return *best;
}

ElementSequence singular_witness_sequence(const Charge& nu, const ChargeFamily& family,
                                          const Rational& t) {
    if (!(t > Rational(0) && t < Rational(1))) {
        throw std::invalid_argument("t must lie strictly between 0 and 1");
    }
    const Universe u = nu.universe();
    if (family.is_point_masses()) {
        for (const auto& [x, w] : nu.atoms()) {
            (void)w;
            if (family.support().contains(x)) {
                throw std::invalid_argument(
                    "family member is not singular to nu: point mass at " +
                    std::to_string(x));
            }
        }
    } else {
        for (std::size_t i = 0; i < family.members().size(); ++i) {
            if (!is_singular(family.members()[i], nu)) {
                throw std::invalid_argument("family member " + std::to_string(i) +
                                            " is not singular to nu");
            }
        }
    }
    // the exact support of nu: its atom points plus its carrier cores
    EPSet atom_pts = EPSet::empty(u);
    for (const auto& [x, w] : nu.atoms()) {
        (void)w;
        if (u.kind == UniverseKind::Finite) {
            std::vector<bool> bits(u.size, false);
            bits.at(static_cast<std::size_t>(x)) = true;
            atom_pts = join(atom_pts, EPSet::finite_universe(u.size, std::move(bits)));
        } else {
            atom_pts = join(atom_pts, EPSet::singleton(x));
        }
    }
    const EPSet carriers = nu.carrier_union();
    return seq_join(ElementSequence::constant(atom_pts), ElementSequence::tails(carriers));
}

}  // namespace chargelab
