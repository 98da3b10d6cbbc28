#include "chargelab/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace chargelab {

namespace {

// bit t of the word (0^i 1)^∞
bool word_bit(int index, long long t) { return t % (index + 1) == index; }

}  // namespace

Branch::Branch(int index) : index_(index) {
    if (index < 0 || index > 63) {
        throw std::invalid_argument("branch index out of range [0, 63]");
    }
}

bool Branch::contains(long long n) const {
    if (n < 1) return false;
    // strip the leading 1 bit; the remaining digits must form a word prefix
    int top = 63;
    while (top > 0 && !((n >> top) & 1)) --top;
    for (int t = top - 1; t >= 0; --t) {
        bool bit = (n >> t) & 1;
        if (bit != word_bit(index_, top - 1 - t)) return false;
    }
    return true;
}

long long Branch::element(std::size_t j) const {
    if (j > 61) throw std::overflow_error("branch element code exceeds 64 bits");
    long long c = 1;
    for (std::size_t t = 0; t < j; ++t) {
        c = 2 * c + (word_bit(index_, static_cast<long long>(t)) ? 1 : 0);
    }
    return c;
}

std::vector<long long> Branch::elements(std::size_t count) const {
    std::vector<long long> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) out.push_back(element(j));
    return out;
}

EPSet Branch::truncation(long long bound) const {
    std::vector<long long> pts;
    for (std::size_t j = 0; j <= 61; ++j) {
        long long c = element(j);
        if (c >= bound) break;
        pts.push_back(c);
    }
    return EPSet::from_points(pts);
}

std::string Branch::to_text() const {
    std::string block(static_cast<std::size_t>(index_), '0');
    block.push_back('1');
    return "branch=" + block;
}

std::vector<long long> branch_intersection(const Branch& a, const Branch& b) {
    if (a.index() == b.index()) {
        throw std::invalid_argument("branch intersection requires distinct branches");
    }
    // the words agree exactly on the first min(i, j) letters
    std::size_t lcp = static_cast<std::size_t>(std::min(a.index(), b.index()));
    return a.elements(lcp + 1);
}

bool branch_ep_intersection_finite(const Branch& b, const EPSet& e) {
    if (e.universe().kind == UniverseKind::Finite || e.is_finite()) return true;
    const long long p = static_cast<long long>(e.period());
    const long long L = b.index() + 1;
    const long long plen = static_cast<long long>(e.prefix_len());
    // advance until codes clear the explicit prefix of e (codes double each step)
    std::size_t l0 = 0;
    Int code = 1;
    while (code < plen && l0 < 128) {
        code = 2 * code + (word_bit(b.index(), static_cast<long long>(l0)) ? 1 : 0);
        ++l0;
    }
    long long r = static_cast<long long>(code % p);
    // membership of a residue class past the prefix
    auto class_meets = [&](long long res) {
        long long k = plen + ((res - plen) % p + p) % p;
        return e.contains(k);
    };
    // the state (r, l mod L) enters its cycle within p*L steps; any state
    // visited during the following p*L steps recurs infinitely often
    const long long lead = p * L;
    long long l = static_cast<long long>(l0);
    for (long long step = 0; step < 2 * lead + 1; ++step) {
        if (step >= lead && class_meets(r)) return false;
        r = (2 * r + (word_bit(b.index(), l) ? 1 : 0)) % p;
        ++l;
    }
    return true;
}

std::vector<Branch> almost_disjoint_family(int k) {
    if (k < 1 || k > 64) {
        throw std::invalid_argument("family size out of range [1, 64]");
    }
    std::vector<Branch> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out.emplace_back(i);
    return out;
}

ElementSequence tail_sequence(const EPSet& b) {
    if (b.universe().kind == UniverseKind::Finite || b.is_finite()) {
        throw std::invalid_argument("tail sequence requires an infinite subset of ℕ");
    }
    return ElementSequence::tails(b);
}

Rational branch_tail_limit(const Charge& nu, const Branch& b) {
    (void)b;
    if (nu.universe().kind == UniverseKind::Finite) {
        throw std::invalid_argument("branch sets live over ℕ");
    }
    // the density part vanishes on subsets of a density-0 set and each atom
    // is excluded from B ∩ [n, ∞) once n passes it
    return Rational(0);
}

CensusReport quasi_disjoint_census(const std::vector<ElementSequence>& family,
                                   const Charge& nu, const Rational& eps) {
    if (!(eps > Rational(0))) throw std::invalid_argument("eps must be positive");
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!family[i].is_decreasing()) {
            throw std::invalid_argument("sequence " + std::to_string(i) +
                                        " is not decreasing");
        }
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if (!is_quasi_disjoint(family[i], family[j])) {
                throw std::invalid_argument("sequences " + std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " are not quasi-disjoint");
            }
        }
    }
    CensusReport report;
    report.bound = nu.norm();
    report.total = Rational(0);
    for (std::size_t i = 0; i < family.size(); ++i) {
        Rational v = limsup_functional(nu, family[i]);
        report.limsups.push_back(v);
        report.total += v;
        if (v >= eps) report.heavy.push_back(i);
    }
    if (report.total > report.bound) {
        throw std::logic_error("limsup total exceeds the norm bound");
    }
    if (Rational(static_cast<long long>(report.heavy.size())) * eps > report.bound) {
        throw std::logic_error("census size exceeds norm/eps");
    }
    return report;
}

bool cc_predicate(const std::vector<EPSet>& elements, const ChargeFamily& charges) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].is_empty()) {
            throw std::invalid_argument("element " + std::to_string(i) + " is zero");
        }
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            if (!elements[i].disjoint_from(elements[j])) {
                throw std::invalid_argument("elements " + std::to_string(i) + " and " +
                                            std::to_string(j) + " are not disjoint");
            }
        }
    }
    return std::all_of(elements.begin(), elements.end(), [&](const EPSet& a) {
        return charges.sup_evaluate(a) > Rational(0);
    });
}

}  // namespace chargelab
