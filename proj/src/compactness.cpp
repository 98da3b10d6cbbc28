#include "chargelab/compactness.hpp"

#include <algorithm>
#include <stdexcept>

namespace chargelab {

namespace {

const Universe kNat = Universe::naturals();

void require_naturals(const EPSet& e, const char* what) {
    if (e.universe().kind != UniverseKind::Naturals) {
        throw std::invalid_argument(std::string(what) + " must live over ℕ");
    }
}

// largest admissible geometric block exponent: the coordinate is stored as
// explicit bits up to 2^{k+1}
constexpr long long kMaxGeometricExp = 21;

EPSet geometric_block(long long k) {
    if (k < 0) throw std::invalid_argument("negative coordinate index");
    if (k > kMaxGeometricExp) {
        throw std::domain_error("geometric block exponent " + std::to_string(k) +
                                " exceeds limit " + std::to_string(kMaxGeometricExp));
    }
    return EPSet::range(1LL << k, 1LL << (k + 1));
}

// {k : [wk, wk+w) ∩ support ≠ ∅}; eventually periodic with the same period
EPSet meeting_block_indices(long long w, const EPSet& support) {
    const long long plen = support.prefix_len();
    const long long p = support.period();
    auto meets = [&](long long k) {
        for (long long j = 0; j < w; ++j) {
            if (support.contains(w * k + j)) return true;
        }
        return false;
    };
    std::vector<bool> prefix(static_cast<std::size_t>(plen));
    for (long long k = 0; k < plen; ++k) prefix[static_cast<std::size_t>(k)] = meets(k);
    std::vector<bool> pattern(static_cast<std::size_t>(p));
    for (long long r = 0; r < p; ++r) {
        long long rep = plen + (((r - plen) % p) + p) % p;
        pattern[static_cast<std::size_t>(r)] = meets(rep);
    }
    return EPSet::naturals(std::move(prefix), p, std::move(pattern));
}

// smallest k0 such that every geometric block from k0 on contains a full
// residue cycle of the support past its explicit prefix
long long geometric_saturation_index(const EPSet& support) {
    long long k0 = 0;
    while ((1LL << k0) < std::max<long long>({support.prefix_len(), support.period(), 1})) {
        ++k0;
    }
    return k0;
}

}  // namespace

DisjointSeqGen DisjointSeqGen::singletons() {
    DisjointSeqGen g;
    g.kind_ = Kind::Singletons;
    return g;
}

DisjointSeqGen DisjointSeqGen::blocks(long long width) {
    if (width < 1) throw std::invalid_argument("block width must be positive");
    DisjointSeqGen g;
    g.kind_ = Kind::Blocks;
    g.width_ = width;
    return g;
}

DisjointSeqGen DisjointSeqGen::geometric_blocks() {
    DisjointSeqGen g;
    g.kind_ = Kind::GeometricBlocks;
    return g;
}

DisjointSeqGen DisjointSeqGen::explicit_finite(std::vector<EPSet> coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        require_naturals(coords[i], "explicit coordinate");
        for (std::size_t j = i + 1; j < coords.size(); ++j) {
            if (!coords[i].disjoint_from(coords[j])) {
                throw std::invalid_argument("coordinates " + std::to_string(i) + " and " +
                                            std::to_string(j) + " are not disjoint");
            }
        }
    }
    DisjointSeqGen g;
    g.kind_ = Kind::ExplicitFinite;
    g.coords_ = std::move(coords);
    return g;
}

EPSet DisjointSeqGen::coordinate(long long k) const {
    if (k < 0) throw std::invalid_argument("negative coordinate index");
    switch (kind_) {
        case Kind::Singletons:
            return EPSet::singleton(k);
        case Kind::Blocks:
            return EPSet::range(width_ * k, width_ * (k + 1));
        case Kind::GeometricBlocks:
            return geometric_block(k);
        case Kind::ExplicitFinite:
            if (static_cast<std::size_t>(k) < coords_.size()) {
                return coords_[static_cast<std::size_t>(k)];
            }
            return EPSet::empty(kNat);
    }
    throw std::logic_error("unreachable");
}

bool DisjointSeqGen::representable(const EPSet& e) const {
    if (e.universe().kind != UniverseKind::Naturals) return false;
    switch (kind_) {
        case Kind::Singletons:
        case Kind::ExplicitFinite:
            return true;
        case Kind::Blocks:
            return width_ * e.period() <= period_limit();
        case Kind::GeometricBlocks:
            return e.is_finite() &&
                   (e.is_empty() || *e.max_element_if_finite() <= kMaxGeometricExp);
    }
    return false;
}

EPSet DisjointSeqGen::union_over(const EPSet& e) const {
    require_naturals(e, "index set");
    if (!representable(e)) {
        throw std::invalid_argument("υ(E) is not representable for " + name());
    }
    switch (kind_) {
        case Kind::Singletons:
            return e;
        case Kind::Blocks: {
            // membership of m is membership of ⌊m/w⌋ in e; the index pattern
            // scales to period w·p
            const long long w = width_, p = e.period(), plen = e.prefix_len();
            std::vector<bool> prefix(static_cast<std::size_t>(w * plen));
            for (long long m = 0; m < w * plen; ++m) {
                prefix[static_cast<std::size_t>(m)] = e.contains(m / w);
            }
            std::vector<bool> pattern(static_cast<std::size_t>(w * p));
            for (long long s = 0; s < w * p; ++s) {
                long long q = s / w;
                long long rep = plen + (((q - plen) % p) + p) % p;
                pattern[static_cast<std::size_t>(s)] = e.contains(rep);
            }
            return EPSet::naturals(std::move(prefix), w * p, std::move(pattern));
        }
        case Kind::GeometricBlocks: {
            EPSet out = EPSet::empty(kNat);
            for (long long k : e.finite_elements()) out = join(out, geometric_block(k));
            return out;
        }
        case Kind::ExplicitFinite: {
            EPSet out = EPSet::empty(kNat);
            for (std::size_t k = 0; k < coords_.size(); ++k) {
                if (e.contains(static_cast<long long>(k))) out = join(out, coords_[k]);
            }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

std::string DisjointSeqGen::name() const {
    switch (kind_) {
        case Kind::Singletons:
            return "singletons";
        case Kind::Blocks:
            return "blocks(" + std::to_string(width_) + ")";
        case Kind::GeometricBlocks:
            return "geometric";
        case Kind::ExplicitFinite:
            return "explicit(" + std::to_string(coords_.size()) + ")";
    }
    return "?";
}

Rational inner_measure(const Charge& m, const EPSet& b, const FiniteSubalgebra& sub) {
    if (!(b.universe() == sub.universe())) {
        throw std::invalid_argument("set and subalgebra universes differ");
    }
    Rational best(0);  // ∅ always qualifies
    for (const EPSet& a : sub.elements()) {
        if (a.subset_of(b)) best = std::max(best, m.evaluate(a));
    }
    return best;
}

Rational psi_functional(const ChargeFamily& family, const DisjointSeqGen& gen,
                        const EPSet& e) {
    return family.sup_evaluate(gen.union_over(e));
}

std::string UsaVerdict::to_text() const {
    if (pass) return "verdict=Pass;certificate=" + certificate;
    const UsaWitness& w = *witness;
    return "verdict=Fail;witness=gen=" + std::to_string(w.gen_index) +
           ";eps=" + to_string(w.eps) + ";indices=" + w.indices.to_text();
}

UsaVerdict usa_test(const ChargeFamily& family, const std::vector<DisjointSeqGen>& gens) {
    UsaVerdict v;
    if (!family.is_point_masses()) {
        // every coordinate of every generator beyond the atoms (and beyond
        // any explicit list) is either finite or absent, so the density
        // parts contribute 0 and the values vanish outright
        long long k0 = 1;
        for (const Charge& m : family.members()) {
            k0 = std::max(k0, m.max_atom_point() + 1);
        }
        for (const DisjointSeqGen& g : gens) {
            if (g.kind() == DisjointSeqGen::Kind::ExplicitFinite) {
                k0 = std::max(k0, static_cast<long long>(g.coords().size()));
            }
        }
        v.pass = true;
        v.vanish_from = k0;
        v.certificate =
            "finite family: density components vanish on finite coordinates and "
            "atoms are exhausted; sup over the family of mu(v(k)) = 0 for k >= " +
            std::to_string(k0);
        return v;
    }

    const EPSet& support = family.support();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const DisjointSeqGen& g = gens[gi];
        EPSet hit_indices = EPSet::empty(kNat);
        switch (g.kind()) {
            case DisjointSeqGen::Kind::Singletons:
                hit_indices = support;
                break;
            case DisjointSeqGen::Kind::Blocks:
                hit_indices = meeting_block_indices(g.width(), support);
                break;
            case DisjointSeqGen::Kind::GeometricBlocks:
                if (support.is_infinite()) {
                    hit_indices = EPSet::ray(geometric_saturation_index(support));
                }
                break;
            case DisjointSeqGen::Kind::ExplicitFinite:
                break;  // at most |coords| coordinates can meet the support
        }
        if (hit_indices.is_infinite()) {
            v.pass = false;
            v.witness = UsaWitness{gi, hit_indices, Rational(1)};
            return v;
        }
    }
    // only ExplicitFinite generators survive to this point (the support is
    // infinite, so the covering variants all produced an infinite hit set);
    // count exactly how many of the finitely many coordinates the support meets
    long long met = 0;
    for (const DisjointSeqGen& g : gens) {
        for (const EPSet& c : g.coords()) {
            if (!c.disjoint_from(support)) ++met;
        }
    }
    v.pass = true;
    v.certificate = "point masses: the support meets exactly " + std::to_string(met) +
                    " coordinates across all generators";
    return v;
}

std::string WcVerdict::to_text() const {
    switch (kind) {
        case WcKind::NormUnbounded:
            return "verdict=NormUnbounded";
        case WcKind::NotUSA: {
            const UsaWitness& w = *witness;
            return "verdict=NotUSA;witness=gen=" + std::to_string(w.gen_index) +
                   ";eps=" + to_string(w.eps) + ";indices=" + w.indices.to_text();
        }
        case WcKind::CompatibleWithWeakCompactness:
            return "verdict=CompatibleWithWeakCompactness;certificate=" + certificate;
    }
    return "?";
}

WcVerdict weak_compactness_check(const ChargeFamily& family,
                                 const std::vector<DisjointSeqGen>& gens) {
    // both representable family shapes carry a finite norm bound, so the
    // NormUnbounded arm is vacuous here; it remains for the verdict contract
    WcVerdict v;
    UsaVerdict usa = usa_test(family, gens);
    if (!usa.pass) {
        v.kind = WcKind::NotUSA;
        v.witness = usa.witness;
        return v;
    }
    v.kind = WcKind::CompatibleWithWeakCompactness;
    v.certificate = "norm bound " + to_string(family.norm_bound()) + "; " + usa.certificate;
    return v;
}

Rational branch_psi_limsup(const ChargeFamily& family, const DisjointSeqGen& gen,
                           const Branch& b) {
    if (family.is_point_masses()) {
        // 1 exactly when the support meets coordinates indexed by infinitely
        // many branch elements, else the values reach 0 and stay there
        const EPSet& support = family.support();
        switch (gen.kind()) {
            case DisjointSeqGen::Kind::Singletons:
                return branch_ep_intersection_finite(b, support) ? Rational(0)
                                                                 : Rational(1);
            case DisjointSeqGen::Kind::Blocks:
                return branch_ep_intersection_finite(
                           b, meeting_block_indices(gen.width(), support))
                           ? Rational(0)
                           : Rational(1);
            case DisjointSeqGen::Kind::GeometricBlocks:
                return support.is_infinite() ? Rational(1) : Rational(0);
            case DisjointSeqGen::Kind::ExplicitFinite:
                return Rational(0);
        }
        throw std::logic_error("unreachable");
    }
    bool has_density = std::any_of(
        family.members().begin(), family.members().end(),
        [](const Charge& m) { return !m.densities().empty(); });
    if (has_density && gen.kind() == DisjointSeqGen::Kind::GeometricBlocks) {
        throw std::invalid_argument(
            "ψ-limsup for density charges over geometric blocks is not representable");
    }
    // atoms fall out of υ(B ∩ [n, ∞)) once n passes their coordinate index,
    // and the density parts vanish on these density-0 unions
    return Rational(0);
}

BranchSearchResult minimize_psi_over_branches(const ChargeFamily& family,
                                              const DisjointSeqGen& gen, int k) {
    if (k < 1 || k > 16) throw std::invalid_argument("branch count out of range [1, 16]");
    BranchSearchResult best{0, branch_psi_limsup(family, gen, Branch(0))};
    for (int i = 1; i < k; ++i) {
        Rational v = branch_psi_limsup(family, gen, Branch(i));
        if (v < best.psi_limsup) best = {i, v};
    }
    return best;
}

}  // namespace chargelab
