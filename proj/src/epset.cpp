#include "chargelab/epset.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chargelab {

long long period_limit() {
    if (const char* env = std::getenv("CHARGE_LAB_PERIOD_LIMIT")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 1000000LL;
}

namespace {

long long lcm_guarded(long long a, long long b) {
    long long g = std::gcd(a, b);
    long long l = a / g * b;
    if (l > period_limit()) {
        throw std::domain_error("period guard: result period " + std::to_string(l) +
                                " exceeds limit " + std::to_string(period_limit()));
    }
    return l;
}

}  // namespace

void EPSet::check_same_universe(const EPSet& a, const EPSet& b) {
    if (!(a.universe_ == b.universe_)) {
        throw std::invalid_argument("universe mismatch between EPSet operands");
    }
}

void EPSet::canonicalize() {
    if (universe_.kind == UniverseKind::Finite) {
        bits_.resize(universe_.size);
        prefix_.clear();
        period_ = 1;
        pattern_ = {false};
        return;
    }
    bits_.clear();
    // minimal period: smallest divisor d of period with d-shift-invariant pattern
    for (long long d = 1; d <= period_; ++d) {
        if (period_ % d != 0) continue;
        bool ok = true;
        for (long long r = 0; r < period_ && ok; ++r) {
            if (pattern_[static_cast<std::size_t>(r)] !=
                pattern_[static_cast<std::size_t>(r % d)]) {
                ok = false;
            }
        }
        if (ok) {
            pattern_.resize(static_cast<std::size_t>(d));
            period_ = d;
            break;
        }
    }
    // minimal prefix: drop trailing prefix bits that agree with the periodic rule
    while (!prefix_.empty()) {
        long long k = static_cast<long long>(prefix_.size()) - 1;
        if (prefix_.back() == pattern_[static_cast<std::size_t>(k % period_)]) {
            prefix_.pop_back();
        } else {
            break;
        }
    }
}

EPSet EPSet::empty(Universe u) {
    EPSet s;
    s.universe_ = u;
    if (u.kind == UniverseKind::Finite) {
        s.bits_.assign(u.size, false);
    }
    s.canonicalize();
    return s;
}

EPSet EPSet::full(Universe u) {
    EPSet s;
    s.universe_ = u;
    if (u.kind == UniverseKind::Finite) {
        s.bits_.assign(u.size, true);
    } else {
        s.pattern_ = {true};
    }
    s.canonicalize();
    return s;
}

EPSet EPSet::finite_universe(std::size_t n, std::vector<bool> bits) {
    if (bits.size() != n) throw std::invalid_argument("bitset size differs from universe size");
    EPSet s;
    s.universe_ = Universe::finite(n);
    s.bits_ = std::move(bits);
    s.canonicalize();
    return s;
}

EPSet EPSet::naturals(std::vector<bool> prefix_bits, long long period,
                      std::vector<bool> pattern) {
    if (period < 1) throw std::invalid_argument("period must be >= 1");
    if (pattern.size() != static_cast<std::size_t>(period)) {
        throw std::invalid_argument("pattern size differs from period");
    }
    if (period > period_limit()) {
        throw std::domain_error("period guard: period exceeds limit");
    }
    EPSet s;
    s.universe_ = Universe::naturals();
    s.prefix_ = std::move(prefix_bits);
    s.period_ = period;
    s.pattern_ = std::move(pattern);
    s.canonicalize();
    return s;
}

EPSet EPSet::residue_class(long long r, long long m) { return residues({r}, m); }

EPSet EPSet::residues(const std::vector<long long>& rs, long long m) {
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    std::vector<bool> pattern(static_cast<std::size_t>(m), false);
    for (long long r : rs) {
        if (r < 0 || r >= m) throw std::invalid_argument("residue out of range");
        pattern[static_cast<std::size_t>(r)] = true;
    }
    return naturals({}, m, std::move(pattern));
}

EPSet EPSet::from_points(const std::vector<long long>& pts) {
    long long top = -1;
    for (long long p : pts) {
        if (p < 0) throw std::invalid_argument("negative point");
        top = std::max(top, p);
    }
    std::vector<bool> prefix(static_cast<std::size_t>(top + 1), false);
    for (long long p : pts) prefix[static_cast<std::size_t>(p)] = true;
    return naturals(std::move(prefix), 1, {false});
}

EPSet EPSet::ray(long long a) {
    if (a < 0) a = 0;
    return naturals(std::vector<bool>(static_cast<std::size_t>(a), false), 1, {true});
}

EPSet EPSet::range(long long a, long long b) {
    if (a < 0) a = 0;
    if (b <= a) return empty(Universe::naturals());
    std::vector<bool> prefix(static_cast<std::size_t>(b), false);
    for (long long k = a; k < b; ++k) prefix[static_cast<std::size_t>(k)] = true;
    return naturals(std::move(prefix), 1, {false});
}

bool EPSet::contains(long long k) const {
    if (k < 0) return false;
    if (universe_.kind == UniverseKind::Finite) {
        if (k >= static_cast<long long>(universe_.size)) return false;
        return bits_[static_cast<std::size_t>(k)];
    }
    if (k < prefix_len()) return prefix_[static_cast<std::size_t>(k)];
    return pattern_[static_cast<std::size_t>(k % period_)];
}

bool EPSet::is_empty() const {
    if (universe_.kind == UniverseKind::Finite) {
        return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
    }
    return prefix_.empty() && std::none_of(pattern_.begin(), pattern_.end(),
                                           [](bool b) { return b; });
}

bool EPSet::is_full() const {
    if (universe_.kind == UniverseKind::Finite) {
        return std::all_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
    }
    return prefix_.empty() && std::all_of(pattern_.begin(), pattern_.end(),
                                          [](bool b) { return b; });
}

bool EPSet::is_finite() const {
    if (universe_.kind == UniverseKind::Finite) return true;
    return std::none_of(pattern_.begin(), pattern_.end(), [](bool b) { return b; });
}

std::vector<long long> EPSet::finite_elements() const {
    if (!is_finite()) throw std::logic_error("finite_elements on an infinite set");
    long long bound = universe_.kind == UniverseKind::Finite
                          ? static_cast<long long>(universe_.size)
                          : prefix_len();
    return elements_below(bound);
}

std::optional<long long> EPSet::min_element() const {
    long long bound = universe_.kind == UniverseKind::Finite
                          ? static_cast<long long>(universe_.size)
                          : prefix_len() + period_;
    for (long long k = 0; k < bound; ++k) {
        if (contains(k)) return k;
    }
    return std::nullopt;
}

std::optional<long long> EPSet::max_element_if_finite() const {
    if (!is_finite()) return std::nullopt;
    auto elems = finite_elements();
    if (elems.empty()) return std::nullopt;
    return elems.back();
}

std::vector<long long> EPSet::elements_below(long long n) const {
    std::vector<long long> out;
    if (universe_.kind == UniverseKind::Finite) {
        n = std::min(n, static_cast<long long>(universe_.size));
    }
    for (long long k = 0; k < n; ++k) {
        if (contains(k)) out.push_back(k);
    }
    return out;
}

Rational EPSet::density() const {
    if (universe_.kind != UniverseKind::Naturals) {
        throw std::invalid_argument("natural density requires the Naturals universe");
    }
    long long count = std::count(pattern_.begin(), pattern_.end(), true);
    return Rational(count, period_);
}

EPSet EPSet::complement() const {
    EPSet s = *this;
    if (universe_.kind == UniverseKind::Finite) {
        s.bits_.flip();
    } else {
        s.prefix_.flip();
        s.pattern_.flip();
    }
    s.canonicalize();
    return s;
}

namespace {

EPSet combine(const EPSet& a, const EPSet& b, bool (*op)(bool, bool)) {
    if (a.universe().kind == UniverseKind::Finite) {
        std::vector<bool> bits(a.universe().size);
        for (std::size_t k = 0; k < bits.size(); ++k) {
            bits[k] = op(a.contains(static_cast<long long>(k)),
                         b.contains(static_cast<long long>(k)));
        }
        return EPSet::finite_universe(a.universe().size, std::move(bits));
    }
    long long n = std::max(a.prefix_len(), b.prefix_len());
    long long p = a.period();
    // lcm of periods, guarded
    {
        long long g = std::gcd(a.period(), b.period());
        p = a.period() / g * b.period();
    }
    std::vector<bool> prefix(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
        prefix[static_cast<std::size_t>(k)] = op(a.contains(k), b.contains(k));
    }
    std::vector<bool> pattern(static_cast<std::size_t>(p));
    for (long long r = 0; r < p; ++r) {
        // smallest k >= n with k ≡ r (mod p)
        long long k = r;
        if (k < n) k += (n - k + p - 1) / p * p;
        pattern[static_cast<std::size_t>(r)] = op(a.contains(k), b.contains(k));
    }
    return EPSet::naturals(std::move(prefix), p, std::move(pattern));
}

}  // namespace

EPSet meet(const EPSet& a, const EPSet& b) {
    EPSet::check_same_universe(a, b);
    if (a.universe_.kind == UniverseKind::Naturals) lcm_guarded(a.period_, b.period_);
    return combine(a, b, [](bool x, bool y) { return x && y; });
}

EPSet join(const EPSet& a, const EPSet& b) {
    EPSet::check_same_universe(a, b);
    if (a.universe_.kind == UniverseKind::Naturals) lcm_guarded(a.period_, b.period_);
    return combine(a, b, [](bool x, bool y) { return x || y; });
}

EPSet difference(const EPSet& a, const EPSet& b) {
    EPSet::check_same_universe(a, b);
    if (a.universe_.kind == UniverseKind::Naturals) lcm_guarded(a.period_, b.period_);
    return combine(a, b, [](bool x, bool y) { return x && !y; });
}

EPSet sym_diff(const EPSet& a, const EPSet& b) {
    EPSet::check_same_universe(a, b);
    if (a.universe_.kind == UniverseKind::Naturals) lcm_guarded(a.period_, b.period_);
    return combine(a, b, [](bool x, bool y) { return x != y; });
}

bool EPSet::subset_of(const EPSet& other) const {
    return difference(*this, other).is_empty();
}

bool EPSet::disjoint_from(const EPSet& other) const {
    return meet(*this, other).is_empty();
}

EPSet EPSet::periodic_core() const {
    if (universe_.kind == UniverseKind::Finite) return *this;
    EPSet s = *this;
    s.prefix_.clear();
    s.canonicalize();
    return s;
}

bool EPSet::equal_mod_finite(const EPSet& other) const {
    if (universe_.kind == UniverseKind::Finite) return *this == other;
    return periodic_core() == other.periodic_core();
}

std::string EPSet::to_text() const {
    std::ostringstream os;
    if (universe_.kind == UniverseKind::Finite) {
        os << "bits=";
        for (bool b : bits_) os << (b ? '1' : '0');
        return os.str();
    }
    os << "prefix=";
    for (bool b : prefix_) os << (b ? '1' : '0');
    os << ";period=" << period_ << ";pattern=";
    bool first = true;
    for (long long r = 0; r < period_; ++r) {
        if (pattern_[static_cast<std::size_t>(r)]) {
            if (!first) os << ',';
            os << r;
            first = false;
        }
    }
    return os.str();
}

EPSet EPSet::parse(const std::string& text) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("malformed EPSet '" + text + "': " + why);
    };
    if (text.rfind("bits=", 0) == 0) {
        std::string bits = text.substr(5);
        std::vector<bool> b;
        for (char c : bits) {
            if (c != '0' && c != '1') throw bad("bitstring must be 0/1");
            b.push_back(c == '1');
        }
        const std::size_t n = b.size();
        return finite_universe(n, std::move(b));
    }
    if (text.rfind("prefix=", 0) != 0) throw bad("expected 'prefix=' or 'bits='");
    auto semi1 = text.find(';');
    if (semi1 == std::string::npos) throw bad("missing ';period='");
    std::string prefix_str = text.substr(7, semi1 - 7);
    std::string rest = text.substr(semi1 + 1);
    if (rest.rfind("period=", 0) != 0) throw bad("expected 'period='");
    auto semi2 = rest.find(';');
    if (semi2 == std::string::npos) throw bad("missing ';pattern='");
    long long period = 0;
    try {
        period = std::stoll(rest.substr(7, semi2 - 7));
    } catch (const std::exception&) {
        throw bad("period is not an integer");
    }
    if (period < 1) throw bad("period must be >= 1");
    std::string pat = rest.substr(semi2 + 1);
    if (pat.rfind("pattern=", 0) != 0) throw bad("expected 'pattern='");
    pat = pat.substr(8);
    std::vector<bool> prefix;
    for (char c : prefix_str) {
        if (c != '0' && c != '1') throw bad("prefix bitstring must be 0/1");
        prefix.push_back(c == '1');
    }
    std::vector<bool> pattern(static_cast<std::size_t>(period), false);
    std::istringstream ps(pat);
    std::string tok;
    while (std::getline(ps, tok, ',')) {
        if (tok.empty()) continue;
        long long r = 0;
        try {
            r = std::stoll(tok);
        } catch (const std::exception&) {
            throw bad("pattern residue is not an integer");
        }
        if (r < 0 || r >= period) throw bad("pattern residue out of range");
        pattern[static_cast<std::size_t>(r)] = true;
    }
    return naturals(std::move(prefix), period, std::move(pattern));
}

}  // namespace chargelab
