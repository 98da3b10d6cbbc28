#include "chargelab/charge.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chargelab {

namespace {

void check_universe(Universe a, Universe b, const char* what) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string("universe mismatch in ") + what);
    }
}

EPSet singleton_in(Universe u, long long x) {
    if (u.kind == UniverseKind::Finite) {
        std::vector<bool> bits(u.size, false);
        bits.at(static_cast<std::size_t>(x)) = true;
        return EPSet::finite_universe(u.size, std::move(bits));
    }
    return EPSet::singleton(x);
}

}  // namespace

Charge Charge::zero(Universe u) {
    Charge c;
    c.universe_ = u;
    return c;
}

Charge Charge::point_mass(long long x, Rational w, Universe u) {
    Charge c;
    c.universe_ = u;
    c.atoms_[x] = std::move(w);
    c.canonicalize();
    return c;
}

Charge Charge::density(Rational coeff, EPSet carrier) {
    Charge c;
    c.universe_ = carrier.universe();
    c.densities_.push_back({std::move(coeff), std::move(carrier)});
    c.canonicalize();
    return c;
}

Charge Charge::from_parts(std::map<long long, Rational> atoms,
                          std::vector<DensityComponent> densities, Universe u) {
    Charge c;
    c.universe_ = u;
    c.atoms_ = std::move(atoms);
    c.densities_ = std::move(densities);
    c.canonicalize();
    return c;
}

void Charge::canonicalize() {
    for (auto it = atoms_.begin(); it != atoms_.end();) {
        if (it->second < Rational(0)) {
            throw std::invalid_argument("negative atom weight");
        }
        if (universe_.kind == UniverseKind::Finite &&
            it->first >= static_cast<long long>(universe_.size)) {
            throw std::invalid_argument("atom point outside the finite universe");
        }
        if (it->first < 0) throw std::invalid_argument("negative atom point");
        it = it->second == Rational(0) ? atoms_.erase(it) : std::next(it);
    }
    if (densities_.empty()) return;
    if (universe_.kind == UniverseKind::Finite) {
        throw std::invalid_argument("density components need the Naturals universe");
    }
    long long lcm = 1;
    std::vector<DensityComponent> kept;
    for (auto& d : densities_) {
        if (d.coeff < Rational(0)) throw std::invalid_argument("negative density coefficient");
        if (!(d.carrier.universe() == universe_)) {
            throw std::invalid_argument("carrier universe differs from charge universe");
        }
        EPSet core = d.carrier.periodic_core();
        if (d.coeff == Rational(0) || core.is_empty()) continue;
        long long g = std::gcd(lcm, core.period());
        lcm = lcm / g * core.period();
        if (lcm > period_limit()) {
            throw std::domain_error("period guard: carrier lcm " + std::to_string(lcm) +
                                    " exceeds limit " + std::to_string(period_limit()));
        }
        kept.push_back({std::move(d.coeff), std::move(core)});
    }
    // weight function on residues mod lcm, regrouped by distinct value
    std::map<Rational, std::vector<long long>> by_weight;
    for (long long r = 0; r < lcm; ++r) {
        Rational w(0);
        for (const auto& d : kept) {
            if (d.carrier.contains(r)) w += d.coeff;
        }
        if (w != Rational(0)) by_weight[w].push_back(r);
    }
    densities_.clear();
    for (auto& [w, rs] : by_weight) {
        densities_.push_back({w, EPSet::residues(rs, lcm)});
    }
}

Rational Charge::evaluate(const EPSet& a) const {
    check_universe(universe_, a.universe(), "evaluate");
    Rational v = atom_mass(a);
    for (const auto& d : densities_) {
        v += d.coeff * meet(a, d.carrier).density();
    }
    return v;
}

Rational Charge::atom_mass(const EPSet& a) const {
    check_universe(universe_, a.universe(), "atom_mass");
    Rational v(0);
    for (const auto& [x, w] : atoms_) {
        if (a.contains(x)) v += w;
    }
    return v;
}

Rational Charge::density_mass(const EPSet& a) const {
    check_universe(universe_, a.universe(), "density_mass");
    Rational v(0);
    for (const auto& d : densities_) {
        v += d.coeff * meet(a, d.carrier).density();
    }
    return v;
}

Rational Charge::norm() const { return evaluate(EPSet::full(universe_)); }

long long Charge::max_atom_point() const {
    return atoms_.empty() ? -1 : atoms_.rbegin()->first;
}

EPSet Charge::carrier_union() const {
    EPSet u = EPSet::empty(universe_);
    for (const auto& d : densities_) u = join(u, d.carrier);
    return u;
}

Charge Charge::atomic_part() const {
    Charge c;
    c.universe_ = universe_;
    c.atoms_ = atoms_;
    return c;
}

Charge Charge::density_part() const {
    Charge c;
    c.universe_ = universe_;
    c.densities_ = densities_;
    return c;
}

Charge Charge::restrict(const EPSet& a) const {
    check_universe(universe_, a.universe(), "restrict");
    Charge c;
    c.universe_ = universe_;
    for (const auto& [x, w] : atoms_) {
        if (a.contains(x)) c.atoms_[x] = w;
    }
    for (const auto& d : densities_) {
        c.densities_.push_back({d.coeff, meet(d.carrier, a)});
    }
    c.canonicalize();
    return c;
}

Charge operator+(const Charge& a, const Charge& b) {
    check_universe(a.universe_, b.universe_, "charge addition");
    Charge c;
    c.universe_ = a.universe_;
    c.atoms_ = a.atoms_;
    for (const auto& [x, w] : b.atoms_) c.atoms_[x] += w;
    c.densities_ = a.densities_;
    c.densities_.insert(c.densities_.end(), b.densities_.begin(), b.densities_.end());
    c.canonicalize();
    return c;
}

Charge operator*(const Rational& s, const Charge& m) {
    if (s < Rational(0)) throw std::invalid_argument("negative scalar for a charge");
    Charge c;
    c.universe_ = m.universe_;
    for (const auto& [x, w] : m.atoms_) c.atoms_[x] = s * w;
    for (const auto& d : m.densities_) c.densities_.push_back({s * d.coeff, d.carrier});
    c.canonicalize();
    return c;
}

std::string Charge::to_text() const {
    std::ostringstream os;
    os << "atoms=";
    bool first = true;
    for (const auto& [x, w] : atoms_) {
        if (!first) os << ",";
        os << x << ":" << to_string(w);
        first = false;
    }
    os << ";densities=";
    first = true;
    for (const auto& d : densities_) {
        if (!first) os << ",";
        os << to_string(d.coeff) << "@<" << d.carrier.to_text() << ">";
        first = false;
    }
    return os.str();
}

Charge Charge::parse(const std::string& text) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("malformed charge '" + text + "': " + why);
    };
    if (text.rfind("atoms=", 0) != 0) throw bad("expected 'atoms='");
    auto dens_pos = text.find(";densities=");
    if (dens_pos == std::string::npos) throw bad("expected ';densities='");
    std::string atoms_body = text.substr(6, dens_pos - 6);
    std::string dens_body = text.substr(dens_pos + 11);

    std::map<long long, Rational> atoms;
    std::istringstream as(atoms_body);
    std::string tok;
    while (std::getline(as, tok, ',')) {
        if (tok.empty()) continue;
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw bad("atom entry needs point:weight");
        long long x = 0;
        try {
            x = std::stoll(tok.substr(0, colon));
        } catch (const std::exception&) {
            throw bad("atom point is not an integer");
        }
        atoms[x] += parse_rational(tok.substr(colon + 1));
    }

    std::vector<DensityComponent> densities;
    std::size_t pos = 0;
    while (pos < dens_body.size()) {
        auto at = dens_body.find("@<", pos);
        if (at == std::string::npos) throw bad("density entry needs coeff@<carrier>");
        Rational coeff = parse_rational(dens_body.substr(pos, at - pos));
        auto close = dens_body.find('>', at + 2);
        if (close == std::string::npos) throw bad("missing '>' after carrier");
        densities.push_back({coeff, EPSet::parse(dens_body.substr(at + 2, close - at - 2))});
        pos = close + 1;
        if (pos < dens_body.size()) {
            if (dens_body[pos] != ',') throw bad("expected ',' between density entries");
            ++pos;
        }
    }
    return from_parts(std::move(atoms), std::move(densities));
}

ChargeFamily ChargeFamily::finite(std::vector<Charge> members) {
    ChargeFamily f;
    if (!members.empty()) {
        for (const auto& m : members) {
            check_universe(m.universe(), members[0].universe(), "charge family");
        }
    }
    f.members_ = std::move(members);
    return f;
}

ChargeFamily ChargeFamily::point_masses(EPSet support) {
    if (support.is_finite()) {
        throw std::invalid_argument("point-mass family needs an infinite support");
    }
    ChargeFamily f;
    f.point_masses_ = std::move(support);
    return f;
}

Universe ChargeFamily::universe() const {
    if (point_masses_) return point_masses_->universe();
    return members_.empty() ? Universe::naturals() : members_[0].universe();
}

Rational ChargeFamily::sup_evaluate(const EPSet& a) const {
    if (point_masses_) {
        return meet(a, *point_masses_).is_empty() ? Rational(0) : Rational(1);
    }
    Rational v(0);
    for (const auto& m : members_) v = std::max(v, m.evaluate(a));
    return v;
}

Rational ChargeFamily::norm_bound() const {
    if (point_masses_) return Rational(1);
    Rational v(0);
    for (const auto& m : members_) v = std::max(v, m.norm());
    return v;
}

DominationResult is_absolutely_continuous(const Charge& mu, const Charge& nu) {
    check_universe(mu.universe(), nu.universe(), "is_absolutely_continuous");
    for (const auto& [x, w] : mu.atoms()) {
        if (!nu.atoms().contains(x)) {
            DominationResult r;
            r.dominated = false;
            r.witness = ElementSequence::constant(singleton_in(mu.universe(), x));
            r.eps = w;
            return r;
        }
    }
    const EPSet cu = nu.carrier_union();
    for (const auto& d : mu.densities()) {
        EPSet out = difference(d.carrier, cu);
        if (!out.is_finite()) {
            DominationResult r;
            r.dominated = false;
            r.witness = ElementSequence::tails(out);
            r.eps = d.coeff * out.density();
            return r;
        }
    }
    DominationResult r;
    r.dominated = true;
    return r;
}

LebesgueDecomposition lebesgue_decompose(const Charge& mu, const Charge& nu) {
    check_universe(mu.universe(), nu.universe(), "lebesgue_decompose");
    const Universe u = mu.universe();
    std::map<long long, Rational> ac_atoms, s_atoms;
    for (const auto& [x, w] : mu.atoms()) {
        (nu.atoms().contains(x) ? ac_atoms : s_atoms)[x] = w;
    }
    const EPSet cu = nu.carrier_union();
    std::vector<DensityComponent> ac_dens, s_dens;
    EPSet s_carriers = EPSet::empty(u);
    for (const auto& d : mu.densities()) {
        ac_dens.push_back({d.coeff, meet(d.carrier, cu)});
        EPSet out = difference(d.carrier, cu);
        s_dens.push_back({d.coeff, out});
        s_carriers = join(s_carriers, out.periodic_core());
    }
    LebesgueDecomposition out;
    out.absolutely_continuous = Charge::from_parts(std::move(ac_atoms), std::move(ac_dens), u);
    out.singular = Charge::from_parts(std::move(s_atoms), std::move(s_dens), u);

    EPSet w = s_carriers;
    for (const auto& [x, unused] : out.singular.atoms()) {
        (void)unused;
        w = join(w, singleton_in(u, x));
    }
    // nu's atoms inside the singular carriers would give the witness positive
    // nu mass; dropping finitely many points changes no density
    for (const auto& [x, unused] : nu.atoms()) {
        (void)unused;
        w = difference(w, singleton_in(u, x));
    }
    out.witness = std::move(w);
    return out;
}

bool is_singular(const Charge& mu, const Charge& nu) {
    return lebesgue_decompose(mu, nu).absolutely_continuous.is_zero();
}

Charge limit_along_decreasing(const Charge& mu, const ElementSequence& sigma) {
    check_universe(mu.universe(), sigma.universe(), "limit_along_decreasing");
    if (!sigma.is_decreasing()) {
        throw std::invalid_argument("limit_along_decreasing needs a decreasing sequence");
    }
    const Universe u = mu.universe();
    EPSet below_meet = EPSet::full(u);
    EPSet above_meet = EPSet::full(u);
    for (std::size_t r = 0; r < sigma.cycle_length(); ++r) {
        below_meet = meet(below_meet, sigma.slot(r).below);
        above_meet = meet(above_meet, sigma.slot(r).above);
    }
    std::map<long long, Rational> atoms;
    for (const auto& [x, w] : mu.atoms()) {
        if (below_meet.contains(x)) atoms[x] = w;
    }
    std::vector<DensityComponent> dens;
    for (const auto& d : mu.densities()) {
        dens.push_back({d.coeff, meet(d.carrier, above_meet)});
    }
    return Charge::from_parts(std::move(atoms), std::move(dens), u);
}

Rational limsup_functional(const Charge& m, const ElementSequence& s) {
    check_universe(m.universe(), s.universe(), "limsup_functional");
    Rational best(0);
    for (std::size_t r = 0; r < s.cycle_length(); ++r) {
        Rational e = m.atom_mass(s.slot(r).below);
        if (m.universe().kind == UniverseKind::Naturals) {
            e += m.density_mass(s.slot(r).above);
        }
        best = std::max(best, e);
    }
    return best;
}

ExpRateResult exp_rate_membership(const ElementSequence& s, const Charge& nu) {
    check_universe(nu.universe(), s.universe(), "exp_rate_membership");
    const std::size_t L = s.cycle_length();
    const long long st = s.stable_from(nu.max_atom_point());
    for (std::size_t r = 0; r < L; ++r) {
        for (std::size_t t = r + 1; t < L; ++t) {
            Rational v = nu.atom_mass(sym_diff(s.slot(r).below, s.slot(t).below));
            if (nu.universe().kind == UniverseKind::Naturals) {
                v += nu.density_mass(sym_diff(s.slot(r).above, s.slot(t).above));
            }
            if (v != Rational(0)) {
                ExpRateResult out;
                out.member = false;
                // an index in slot r past every transient regime
                long long base = s.base();
                long long n0 = std::max(st, base);
                long long shift = (static_cast<long long>(r) - ((n0 - base) %
                                   static_cast<long long>(L)) +
                                   static_cast<long long>(L)) %
                                  static_cast<long long>(L);
                out.witness_index = n0 + shift;
                return out;
            }
        }
    }
    ExpRateResult out;
    out.member = true;
    return out;
}

SandwichResult sandwich(const ElementSequence& s, const Charge& nu, const Rational& eps) {
    check_universe(nu.universe(), s.universe(), "sandwich");
    if (!(eps > Rational(0))) throw std::invalid_argument("eps must be positive");
    ExpRateResult rate = exp_rate_membership(s, nu);
    if (!rate.member) {
        throw std::invalid_argument(
            "sandwich hypothesis fails: sequence is not eventually nu-constant at n=" +
            std::to_string(*rate.witness_index));
    }
    const long long st = std::max(s.stable_from(nu.max_atom_point()), s.base());
    const long long L = static_cast<long long>(s.cycle_length());
    // sup_{k>n} nu(σ(n) △ σ(k)); values for k > st repeat with period L
    auto sup_after = [&](long long n) {
        Rational best(0);
        for (long long k = n + 1; k <= std::max(n, st) + L; ++k) {
            best = std::max(best, nu.evaluate(sym_diff(s.at(n), s.at(k))));
        }
        return best;
    };
    long long N = 0;
    while (!(pow2_inv(static_cast<unsigned>(N)) <= eps / Rational(2))) ++N;
    for (; N <= st; ++N) {
        bool ok = true;
        for (long long n = N; n <= st && ok; ++n) {
            if (!(sup_after(n) < pow2_inv(static_cast<unsigned>(n)))) ok = false;
        }
        if (ok) break;
    }
    SandwichResult out{s.cumulative_meet(N), s.cumulative_join(N), N};
    return out;
}

}  // namespace chargelab
