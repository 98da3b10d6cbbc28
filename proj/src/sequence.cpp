#include "chargelab/sequence.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chargelab {

namespace {

long long mod_ll(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// clipped [a, b) in the given universe
EPSet interval_u(Universe u, long long a, long long b) {
    a = std::max(a, 0LL);
    if (u.kind == UniverseKind::Finite) {
        b = std::min(b, static_cast<long long>(u.size));
        std::vector<bool> bits(u.size, false);
        for (long long k = a; k < b; ++k) bits[static_cast<std::size_t>(k)] = true;
        return EPSet::finite_universe(u.size, std::move(bits));
    }
    if (b <= a) return EPSet::empty(u);
    return EPSet::range(a, b);
}

// clipped [a, ∞) in the given universe
EPSet ray_u(Universe u, long long a) {
    if (u.kind == UniverseKind::Finite) {
        return interval_u(u, a, static_cast<long long>(u.size));
    }
    return EPSet::ray(std::max(a, 0LL));
}

EPSet residue_class_u(Universe u, long long r, long long m) {
    r = mod_ll(r, m);
    if (u.kind == UniverseKind::Finite) {
        std::vector<bool> bits(u.size, false);
        for (long long k = r; k < static_cast<long long>(u.size); k += m) {
            bits[static_cast<std::size_t>(k)] = true;
        }
        return EPSet::finite_universe(u.size, std::move(bits));
    }
    return EPSet::residue_class(r, m);
}

EPSet materialize(Universe u, const CoordTemplate& t, long long n) {
    const long long w = static_cast<long long>(t.window.size());
    const long long start = n + t.lo;
    EPSet out = meet(t.below, interval_u(u, 0, start));
    for (long long i = 0; i < w; ++i) {
        long long p = start + i;
        if (p < 0) continue;
        if (u.kind == UniverseKind::Finite && p >= static_cast<long long>(u.size)) continue;
        if (t.window[static_cast<std::size_t>(i)].contains(p)) {
            out = join(out, interval_u(u, p, p + 1));
        }
    }
    out = join(out, meet(t.above, ray_u(u, start + w)));
    return out;
}

// k < horizon follows pred, k >= horizon follows body
EPSet patch_below_horizon(Universe u, const EPSet& body, long long horizon,
                          const std::function<bool(long long)>& pred) {
    if (u.kind == UniverseKind::Finite) {
        std::vector<bool> bits(u.size, false);
        for (long long k = 0; k < static_cast<long long>(u.size); ++k) {
            bits[static_cast<std::size_t>(k)] = k < horizon ? pred(k) : body.contains(k);
        }
        return EPSet::finite_universe(u.size, std::move(bits));
    }
    EPSet out = meet(body, EPSet::ray(horizon));
    std::vector<long long> pts;
    for (long long k = 0; k < horizon; ++k) {
        if (pred(k)) pts.push_back(k);
    }
    if (!pts.empty()) out = join(out, EPSet::from_points(pts));
    return out;
}

}  // namespace

ElementSequence ElementSequence::constant(EPSet a) {
    ElementSequence s;
    s.universe_ = a.universe();
    CoordTemplate t;
    t.below = a;
    t.above = std::move(a);
    t.lo = 0;
    s.cycle_ = {std::move(t)};
    s.normalize();
    return s;
}

ElementSequence ElementSequence::periodic(std::vector<EPSet> prefix,
                                          std::vector<EPSet> cycle) {
    if (cycle.empty()) throw std::invalid_argument("sequence needs a nonempty period");
    ElementSequence s;
    s.universe_ = cycle[0].universe();
    for (const auto& e : prefix) {
        if (!(e.universe() == s.universe_)) {
            throw std::invalid_argument("sequence coordinates must share a universe");
        }
    }
    for (const auto& e : cycle) {
        if (!(e.universe() == s.universe_)) {
            throw std::invalid_argument("sequence coordinates must share a universe");
        }
    }
    s.prefix_ = std::move(prefix);
    for (auto& e : cycle) {
        CoordTemplate t;
        t.below = e;
        t.above = std::move(e);
        t.lo = 0;
        s.cycle_.push_back(std::move(t));
    }
    s.normalize();
    return s;
}

ElementSequence ElementSequence::tails(EPSet base) {
    ElementSequence s;
    s.universe_ = base.universe();
    CoordTemplate t;
    t.below = EPSet::empty(s.universe_);
    t.above = std::move(base);
    t.lo = 0;
    s.cycle_ = {std::move(t)};
    s.normalize();
    return s;
}

EPSet ElementSequence::at(long long n) const {
    if (n < 0) throw std::invalid_argument("negative sequence index");
    if (n < base()) return prefix_[static_cast<std::size_t>(n)];
    return materialize(universe_, slot_at(n), n);
}

const CoordTemplate& ElementSequence::slot_at(long long n) const {
    const long long L = static_cast<long long>(cycle_.size());
    return cycle_[static_cast<std::size_t>(mod_ll(n - base(), L))];
}

void ElementSequence::normalize() {
    // merge window edges that agree structurally with the flanking zones
    while (!cycle_.front().window.empty()) {
        bool all_front = std::all_of(cycle_.begin(), cycle_.end(), [](const CoordTemplate& t) {
            return t.window.front() == t.below;
        });
        if (!all_front) break;
        for (auto& t : cycle_) {
            t.window.erase(t.window.begin());
            t.lo += 1;
        }
    }
    while (!cycle_.front().window.empty()) {
        bool all_back = std::all_of(cycle_.begin(), cycle_.end(), [](const CoordTemplate& t) {
            return t.window.back() == t.above;
        });
        if (!all_back) break;
        for (auto& t : cycle_) t.window.pop_back();
    }
    // minimal cycle length over structural equality
    const long long L = static_cast<long long>(cycle_.size());
    for (long long d = 1; d < L; ++d) {
        if (L % d != 0) continue;
        bool ok = true;
        for (long long r = 0; r < L && ok; ++r) {
            if (!(cycle_[static_cast<std::size_t>(r)] ==
                  cycle_[static_cast<std::size_t>(r % d)])) {
                ok = false;
            }
        }
        if (ok) {
            cycle_.resize(static_cast<std::size_t>(d));
            break;
        }
    }
    // shrink the prefix where it already follows the periodic description
    while (!prefix_.empty()) {
        std::vector<CoordTemplate> rotated(cycle_.size());
        const std::size_t n = cycle_.size();
        for (std::size_t i = 0; i < n; ++i) rotated[(i + 1) % n] = cycle_[i];
        const long long pos = base() - 1;
        if (prefix_.back() == materialize(universe_, rotated[0], pos)) {
            prefix_.pop_back();
            cycle_ = std::move(rotated);
        } else {
            break;
        }
    }
}

void ElementSequence::align(ElementSequence& a, ElementSequence& b) {
    if (!(a.universe_ == b.universe_)) {
        throw std::invalid_argument("universe mismatch between sequences");
    }
    // common cycle length
    const long long la = static_cast<long long>(a.cycle_.size());
    const long long lb = static_cast<long long>(b.cycle_.size());
    const long long L = la / std::gcd(la, lb) * lb;
    auto replicate = [L](ElementSequence& s) {
        const std::size_t l = s.cycle_.size();
        std::vector<CoordTemplate> c(static_cast<std::size_t>(L));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = s.cycle_[i % l];
        s.cycle_ = std::move(c);
    };
    replicate(a);
    replicate(b);
    // common base: unroll the shorter prefix
    auto extend_prefix_to = [](ElementSequence& s, long long target) {
        while (s.base() < target) {
            s.prefix_.push_back(materialize(s.universe_, s.cycle_[0], s.base()));
            std::rotate(s.cycle_.begin(), s.cycle_.begin() + 1, s.cycle_.end());
        }
    };
    const long long B = std::max(a.base(), b.base());
    extend_prefix_to(a, B);
    extend_prefix_to(b, B);
    // common window span
    const long long lo = std::min(a.lo(), b.lo());
    const long long end = std::max(a.lo() + a.window_size(), b.lo() + b.window_size());
    auto widen = [lo, end](ElementSequence& s) {
        for (auto& t : s.cycle_) {
            std::vector<EPSet> win;
            for (long long d = lo; d < end; ++d) {
                if (d < t.lo) {
                    win.push_back(t.below);
                } else if (d < t.lo + static_cast<long long>(t.window.size())) {
                    win.push_back(t.window[static_cast<std::size_t>(d - t.lo)]);
                } else {
                    win.push_back(t.above);
                }
            }
            t.window = std::move(win);
            t.lo = lo;
        }
    };
    widen(a);
    widen(b);
}

ElementSequence ElementSequence::combine(const ElementSequence& a, const ElementSequence& b,
                                         EPSet (*op)(const EPSet&, const EPSet&)) {
    ElementSequence x = a;
    ElementSequence y = b;
    align(x, y);
    ElementSequence r;
    r.universe_ = x.universe_;
    r.prefix_.reserve(x.prefix_.size());
    for (std::size_t i = 0; i < x.prefix_.size(); ++i) {
        r.prefix_.push_back(op(x.prefix_[i], y.prefix_[i]));
    }
    r.cycle_.resize(x.cycle_.size());
    for (std::size_t i = 0; i < x.cycle_.size(); ++i) {
        const CoordTemplate& tx = x.cycle_[i];
        const CoordTemplate& ty = y.cycle_[i];
        CoordTemplate t;
        t.lo = tx.lo;
        t.below = op(tx.below, ty.below);
        t.above = op(tx.above, ty.above);
        t.window.reserve(tx.window.size());
        for (std::size_t j = 0; j < tx.window.size(); ++j) {
            t.window.push_back(op(tx.window[j], ty.window[j]));
        }
        r.cycle_[i] = std::move(t);
    }
    r.normalize();
    return r;
}

ElementSequence seq_meet(const ElementSequence& a, const ElementSequence& b) {
    return ElementSequence::combine(a, b, &meet);
}
ElementSequence seq_join(const ElementSequence& a, const ElementSequence& b) {
    return ElementSequence::combine(a, b, &join);
}
ElementSequence seq_diff(const ElementSequence& a, const ElementSequence& b) {
    return ElementSequence::combine(a, b, &difference);
}
ElementSequence seq_sym_diff(const ElementSequence& a, const ElementSequence& b) {
    return ElementSequence::combine(a, b, &sym_diff);
}

ElementSequence ElementSequence::complement() const {
    ElementSequence s = *this;
    for (auto& e : s.prefix_) e = e.complement();
    for (auto& t : s.cycle_) {
        t.below = t.below.complement();
        for (auto& wset : t.window) wset = wset.complement();
        t.above = t.above.complement();
    }
    s.normalize();
    return s;
}

ElementSequence ElementSequence::shift_left() const {
    ElementSequence s = *this;
    if (!s.prefix_.empty()) {
        s.prefix_.erase(s.prefix_.begin());
    } else if (s.cycle_.size() > 1) {
        std::rotate(s.cycle_.begin(), s.cycle_.begin() + 1, s.cycle_.end());
    }
    // the templates now describe position n+1, one step further along the
    // diagonal
    for (auto& t : s.cycle_) t.lo += 1;
    s.normalize();
    return s;
}

std::optional<long long> ElementSequence::eventually_empty_threshold() const {
    const long long L = static_cast<long long>(cycle_.size());
    long long n0 = std::max(base(), 0LL);
    for (long long r = 0; r < L; ++r) {
        const CoordTemplate& t = cycle_[static_cast<std::size_t>(r)];
        const long long w = static_cast<long long>(t.window.size());
        if (!t.below.is_empty()) return std::nullopt;
        if (universe_.kind == UniverseKind::Finite) {
            // once n + lo >= size, the whole coordinate sits in the below zone
            n0 = std::max(n0, static_cast<long long>(universe_.size) - t.lo);
            continue;
        }
        if (!t.above.is_finite()) return std::nullopt;
        if (auto m = t.above.max_element_if_finite()) {
            n0 = std::max(n0, *m - t.lo - w + 1);
        }
        for (long long i = 0; i < w; ++i) {
            // points visited by window slot i: base + r + t*L + lo + i for t >= 0
            const long long s0 = base() + r + t.lo + i;
            EPSet ap = meet(residue_class_u(universe_, s0, L), ray_u(universe_, s0));
            EPSet hits = meet(t.window[static_cast<std::size_t>(i)], ap);
            if (!hits.is_finite()) return std::nullopt;
            if (auto m = hits.max_element_if_finite()) {
                n0 = std::max(n0, *m - t.lo - i + 1);
            }
        }
    }
    return n0;
}

bool ElementSequence::is_zero_class() const {
    return eventually_empty_threshold().has_value();
}

bool ElementSequence::is_identically_empty() const {
    auto thr = eventually_empty_threshold();
    if (!thr) return false;
    for (long long n = 0; n < *thr; ++n) {
        if (!at(n).is_empty()) return false;
    }
    return true;
}

bool ElementSequence::equals(const ElementSequence& other) const {
    return seq_sym_diff(*this, other).is_identically_empty();
}

bool ElementSequence::same_class(const ElementSequence& other) const {
    return seq_sym_diff(*this, other).is_zero_class();
}

bool ElementSequence::pointwise_leq(const ElementSequence& other) const {
    return seq_diff(*this, other).is_identically_empty();
}

bool ElementSequence::class_leq(const ElementSequence& other) const {
    return seq_diff(*this, other).is_zero_class();
}

bool ElementSequence::is_decreasing() const {
    return seq_diff(shift_left(), *this).is_identically_empty();
}

bool ElementSequence::is_increasing() const {
    return seq_diff(*this, shift_left()).is_identically_empty();
}

long long ElementSequence::stable_from(long long max_point) const {
    return std::max({base(), max_point - lo() + 1, 0LL});
}

ElementSequence ElementSequence::cumulative_meet(long long from) const {
    return cumulative(*this, from, true);
}

ElementSequence ElementSequence::cumulative_join(long long from) const {
    return cumulative(*this, from, false);
}

ElementSequence ElementSequence::cumulative(const ElementSequence& in, long long from,
                                            bool meet_op) {
    const Universe u = in.universe_;
    EPSet (*op)(const EPSet&, const EPSet&) = meet_op ? &meet : &join;
    const EPSet ident = meet_op ? EPSet::full(u) : EPSet::empty(u);

    const long long L = static_cast<long long>(in.cycle_.size());
    const long long B = in.base();
    const long long lo = in.lo();
    const long long w = in.window_size();
    const long long S = std::max(from, 0LL);
    const long long SB = std::max(S, B);

    // aggregates over one full cycle of templates
    EPSet top_all = ident;
    EPSet p_all = ident;
    for (long long r = 0; r < L; ++r) {
        top_all = op(top_all, in.cycle_[static_cast<std::size_t>(r)].above);
        p_all = op(p_all, in.cycle_[static_cast<std::size_t>(r)].below);
    }
    EPSet win_all = ident;
    if (w > 0) {
        win_all = EPSet::empty(u);
        for (long long c = 0; c < L; ++c) {
            EPSet tc = ident;
            for (long long i = 0; i < w; ++i) {
                const long long sj = mod_ll(c - lo - i - B, L);
                tc = op(tc, in.cycle_[static_cast<std::size_t>(sj)]
                                .window[static_cast<std::size_t>(i)]);
            }
            win_all = join(win_all, meet(residue_class_u(u, c, L), tc));
        }
    }
    // fold over the explicit positions before the periodic part
    EPSet pre = ident;
    for (long long j = S; j < B; ++j) pre = op(pre, in.at(j));

    const long long abs_lo = lo < 0 ? -lo : lo;
    const long long c_star = SB + 2 * L + w + abs_lo + 4;   // patch horizon in k
    const long long b_star = c_star + abs_lo + 2 * L + 4;   // result base in n

    ElementSequence r;
    r.universe_ = u;
    EPSet acc = ident;
    for (long long n = 0; n < b_star; ++n) {
        if (n < S) {
            r.prefix_.push_back(ident);
        } else {
            acc = op(acc, in.at(n));
            r.prefix_.push_back(acc);
        }
    }

    EPSet bulk = op(pre, top_all);
    if (w > 0) bulk = op(bulk, win_all);
    bulk = op(bulk, p_all);
    // exact values near the origin, where the cycle folds are still partial
    auto small_k = [&](long long k) {
        bool v = p_all.contains(k);
        // every position that is either explicit or at diagonal distance >= lo
        // is folded directly; the remaining tail is a full cycle of below zones
        for (long long j = S; j <= std::max(k - lo, B - 1); ++j) {
            bool m = in.at(j).contains(k);
            v = meet_op ? (v && m) : (v || m);
        }
        return v;
    };
    const EPSet below_res = patch_below_horizon(u, bulk, c_star, small_k);
    const EPSet above_res = op(pre, top_all);

    const long long rlo = lo - L + 1;
    const long long rw = L + w - 1;
    r.cycle_.resize(static_cast<std::size_t>(L));
    for (long long s = 0; s < L; ++s) {
        const long long n0 = b_star + s;  // representative position of this slot
        CoordTemplate t;
        t.lo = rlo;
        t.below = below_res;
        t.above = above_res;
        for (long long e = rlo; e < rlo + rw; ++e) {
            EPSet m = op(pre, top_all);
            for (long long d = std::max(e, lo); d < lo + w; ++d) {
                const long long sj = mod_ll(n0 + e - d - B, L);
                m = op(m, in.cycle_[static_cast<std::size_t>(sj)]
                              .window[static_cast<std::size_t>(d - lo)]);
            }
            for (long long tb = 0; tb < lo - e; ++tb) {
                const long long sj = mod_ll(n0 - tb - B, L);
                m = op(m, in.cycle_[static_cast<std::size_t>(sj)].below);
            }
            t.window.push_back(std::move(m));
        }
        r.cycle_[static_cast<std::size_t>(s)] = std::move(t);
    }
    r.normalize();
    return r;
}

bool is_quasi_disjoint(const ElementSequence& s, const ElementSequence& t) {
    return seq_meet(s, t).is_zero_class();
}

ElementSequence ElementSequence::with_coords_overridden(std::vector<EPSet> coords) const {
    ElementSequence s = *this;
    while (s.base() < static_cast<long long>(coords.size())) {
        s.prefix_.push_back(materialize(s.universe_, s.cycle_[0], s.base()));
        std::rotate(s.cycle_.begin(), s.cycle_.begin() + 1, s.cycle_.end());
    }
    for (std::size_t i = 0; i < coords.size(); ++i) s.prefix_[i] = std::move(coords[i]);
    s.normalize();
    return s;
}

SeqBounds bounds_mod_finite(const std::vector<ElementSequence>& family) {
    if (family.empty()) throw std::invalid_argument("bounds need a nonempty family");
    ElementSequence up = family[0];
    ElementSequence low = family[0];
    for (std::size_t j = 1; j < family.size(); ++j) {
        up = seq_join(up, family[j]);
        low = seq_meet(low, family[j]);
    }
    // upper(n) = ∪_{j<=n} σ_j(n) and lower(n) = ∩_{j<=n} σ_j(n): the leading
    // coordinates only see the leading members of the family
    const std::size_t m = family.size();
    std::vector<EPSet> up_coords, low_coords;
    for (std::size_t n = 0; n + 1 < m; ++n) {
        EPSet uj = family[0].at(static_cast<long long>(n));
        EPSet lj = uj;
        for (std::size_t j = 1; j <= n; ++j) {
            uj = join(uj, family[j].at(static_cast<long long>(n)));
            lj = meet(lj, family[j].at(static_cast<long long>(n)));
        }
        up_coords.push_back(std::move(uj));
        low_coords.push_back(std::move(lj));
    }
    return {up.with_coords_overridden(std::move(up_coords)),
            low.with_coords_overridden(std::move(low_coords))};
}

ElementSequence make_monotone(const ElementSequence& s, MonotoneDirection dir) {
    if (dir == MonotoneDirection::Increasing) {
        if (s.is_increasing()) return s;
        return s.cumulative_join(0);
    }
    if (s.is_decreasing()) return s;
    return s.cumulative_meet(0);
}

std::string ElementSequence::to_text() const {
    const bool plain = window_size() == 0 &&
                       std::all_of(cycle_.begin(), cycle_.end(),
                                   [](const CoordTemplate& t) { return t.below == t.above; });
    std::ostringstream os;
    if (plain) {
        os << "prefix=[";
        for (std::size_t i = 0; i < prefix_.size(); ++i) {
            if (i) os << ";";
            os << prefix_[i].to_text();
        }
        os << "];period=[";
        for (std::size_t i = 0; i < cycle_.size(); ++i) {
            if (i) os << ";";
            os << cycle_[i].below.to_text();
        }
        os << "]";
        return os.str();
    }
    if (window_size() == 0 && cycle_.size() == 1 && prefix_.empty() &&
        cycle_[0].lo == 0 && cycle_[0].below.is_empty()) {
        return "tails=" + cycle_[0].above.to_text();
    }
    // general zoned description (output only; not part of the instance grammar)
    os << "zoned;lo=" << lo() << ";prefix=[";
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) os << ";";
        os << prefix_[i].to_text();
    }
    os << "];slots=[";
    for (std::size_t i = 0; i < cycle_.size(); ++i) {
        if (i) os << ";";
        os << "{below=" << cycle_[i].below.to_text();
        for (const auto& wset : cycle_[i].window) os << "|" << wset.to_text();
        os << "|above=" << cycle_[i].above.to_text() << "}";
    }
    os << "]";
    return os.str();
}

namespace {

// split a [...] body into EPSet texts; the entries themselves contain ';',
// so tokens are regrouped by their leading key
std::vector<std::string> split_epset_list(const std::string& body,
                                          const std::string& context) {
    std::vector<std::string> out;
    if (body.empty()) return out;
    std::vector<std::string> toks;
    std::string cur;
    for (char c : body) {
        if (c == ';') {
            toks.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    toks.push_back(cur);
    for (std::size_t i = 0; i < toks.size();) {
        if (toks[i].rfind("bits=", 0) == 0) {
            out.push_back(toks[i]);
            ++i;
        } else if (toks[i].rfind("prefix=", 0) == 0) {
            if (i + 2 >= toks.size() || toks[i + 1].rfind("period=", 0) != 0 ||
                toks[i + 2].rfind("pattern=", 0) != 0) {
                throw std::invalid_argument("malformed sequence " + context +
                                            ": set entry '" + toks[i] +
                                            "' is not followed by period= and pattern=");
            }
            out.push_back(toks[i] + ";" + toks[i + 1] + ";" + toks[i + 2]);
            i += 3;
        } else {
            throw std::invalid_argument("malformed sequence " + context +
                                        ": unexpected token '" + toks[i] + "'");
        }
    }
    return out;
}

}  // namespace

ElementSequence ElementSequence::parse(const std::string& text) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("malformed sequence '" + text + "': " + why);
    };
    if (text.rfind("tails=", 0) == 0) {
        return tails(EPSet::parse(text.substr(6)));
    }
    if (text.rfind("prefix=[", 0) != 0) throw bad("expected 'prefix=[' or 'tails='");
    auto close1 = text.find(']');
    if (close1 == std::string::npos) throw bad("missing ']' after prefix");
    std::string prefix_body = text.substr(8, close1 - 8);
    std::string rest = text.substr(close1 + 1);
    if (rest.rfind(";period=[", 0) != 0) throw bad("expected ';period=['");
    if (rest.empty() || rest.back() != ']') throw bad("missing final ']'");
    std::string period_body = rest.substr(9, rest.size() - 10);
    std::vector<EPSet> prefix, cycle;
    const std::string ctx = "'" + text + "'";
    for (const auto& entry : split_epset_list(prefix_body, ctx)) {
        prefix.push_back(EPSet::parse(entry));
    }
    for (const auto& entry : split_epset_list(period_body, ctx)) {
        cycle.push_back(EPSet::parse(entry));
    }
    if (cycle.empty()) throw bad("period list must be nonempty");
    return periodic(std::move(prefix), std::move(cycle));
}

}  // namespace chargelab
