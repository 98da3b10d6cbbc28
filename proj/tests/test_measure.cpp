#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "chargelab/charge.hpp"

using namespace chargelab;

namespace {

EPSet random_epset(std::mt19937& rng) {
    std::uniform_int_distribution<int> plen(0, 4), per(1, 4), bit(0, 1);
    int n = plen(rng), p = per(rng);
    std::vector<bool> prefix(n), pattern(p);
    for (int i = 0; i < n; ++i) prefix[i] = bit(rng);
    for (int i = 0; i < p; ++i) pattern[i] = bit(rng);
    return EPSet::naturals(prefix, p, pattern);
}

Charge random_charge(std::mt19937& rng) {
    std::uniform_int_distribution<int> natoms(0, 2), ndens(0, 2), pt(0, 10), num(1, 5);
    std::map<long long, Rational> atoms;
    for (int i = natoms(rng); i > 0; --i) atoms[pt(rng)] = Rational(num(rng), 5);
    std::vector<DensityComponent> dens;
    for (int i = ndens(rng); i > 0; --i) {
        dens.push_back({Rational(num(rng), 5), random_epset(rng)});
    }
    return Charge::from_parts(std::move(atoms), std::move(dens));
}

const Charge kDensityOne = Charge::density(Rational(1), EPSet::full(Universe::naturals()));

}  // namespace

TEST_CASE("limsup examples") {
    ElementSequence tails_all = ElementSequence::tails(EPSet::full(Universe::naturals()));
    CHECK(limsup_functional(kDensityOne, tails_all) == Rational(1));
    CHECK(limsup_functional(Charge::point_mass(0, Rational(1)), tails_all) == Rational(0));
    // alternating evens / naturals: the sup of the two slot values
    ElementSequence alt = ElementSequence::periodic(
        {}, {EPSet::evens(), EPSet::full(Universe::naturals())});
    CHECK(limsup_functional(kDensityOne, alt) == Rational(1));
    ElementSequence alt2 = ElementSequence::periodic({}, {EPSet::evens(), EPSet::odds()});
    CHECK(limsup_functional(kDensityOne, alt2) == Rational(1, 2));
}

TEST_CASE("limsup is a quotient invariant") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        Charge m = random_charge(rng);
        std::vector<EPSet> cycle{random_epset(rng), random_epset(rng)};
        ElementSequence s = ElementSequence::periodic({}, cycle);
        Rational v = limsup_functional(m, s);
        // mutate up to 20 leading coordinates
        std::uniform_int_distribution<int> nmut(1, 20);
        std::vector<EPSet> prefix;
        for (int i = nmut(rng); i > 0; --i) prefix.push_back(random_epset(rng));
        ElementSequence mutated = ElementSequence::periodic(std::move(prefix), cycle);
        CHECK(limsup_functional(m, mutated) == v);
        CHECK(limsup_functional(m, s.shift_left()) == v);
    }
}

TEST_CASE("limsup of a decreasing sequence is its limit") {
    std::mt19937 rng(202);
    for (int trial = 0; trial < 60; ++trial) {
        Charge m = random_charge(rng);
        ElementSequence dec = ElementSequence::periodic(
            {}, {random_epset(rng), random_epset(rng), random_epset(rng)})
                                  .cumulative_meet(0);
        REQUIRE(dec.is_decreasing());
        Rational ls = limsup_functional(m, dec);
        Charge lim = limit_along_decreasing(m, dec);
        CHECK(ls == lim.norm());
        // the values m(σ(n)) do settle at the limsup
        long long st = dec.stable_from(m.max_atom_point());
        for (long long n = st; n < st + 2 * static_cast<long long>(dec.cycle_length()); ++n) {
            CHECK(m.evaluate(dec.at(n)) == ls);
        }
    }
}

TEST_CASE("exponential-rate membership") {
    CHECK(exp_rate_membership(ElementSequence::constant(EPSet::evens()), kDensityOne).member);
    ElementSequence ev_const = ElementSequence::periodic(
        {EPSet::odds(), EPSet::full(Universe::naturals())}, {EPSet::evens()});
    CHECK(exp_rate_membership(ev_const, kDensityOne).member);
    ElementSequence alt = ElementSequence::periodic(
        {}, {EPSet::evens(), EPSet::full(Universe::naturals())});
    ExpRateResult r = exp_rate_membership(alt, kDensityOne);
    CHECK(!r.member);
    REQUIRE(r.witness_index.has_value());
    long long n = *r.witness_index;
    CHECK(kDensityOne.evaluate(sym_diff(alt.at(n), alt.at(n + 1))) == Rational(1, 2));
    // nu-null slot differences are fine even when the slots differ as sets
    ElementSequence drift = ElementSequence::periodic(
        {}, {EPSet::evens(), join(EPSet::evens(), EPSet::residue_class(1, 1000))});
    Charge nu = Charge::density(Rational(1), EPSet::evens());
    CHECK(exp_rate_membership(drift, nu).member);
}

TEST_CASE("sandwich on a randomized corpus") {
    std::mt19937 rng(303);
    int accepted = 0;
    while (accepted < 200) {
        Charge nu = random_charge(rng);
        // eventually nu-constant: random prefix, then one fixed tail slot
        std::uniform_int_distribution<int> nmut(0, 4);
        std::vector<EPSet> prefix;
        for (int i = nmut(rng); i > 0; --i) prefix.push_back(random_epset(rng));
        ElementSequence s = ElementSequence::periodic(std::move(prefix), {random_epset(rng)});
        std::uniform_int_distribution<int> en(1, 8);
        Rational eps(1, en(rng));
        REQUIRE(exp_rate_membership(s, nu).member);
        ++accepted;
        SandwichResult sw = sandwich(s, nu, eps);
        CHECK(sw.tau.is_decreasing());
        CHECK(sw.ups.complement().is_decreasing());
        for (long long n = sw.start; n < sw.start + 25; ++n) {
            CHECK(sw.tau.at(n).subset_of(s.at(n)));
            CHECK(s.at(n).subset_of(sw.ups.at(n)));
        }
        Rational vt = limsup_functional(nu, sw.tau);
        Rational vs = limsup_functional(nu, s);
        Rational vu = limsup_functional(nu, sw.ups);
        CHECK(vt <= vs);
        CHECK(vs <= vu);
        CHECK(vt + eps >= vs);
        CHECK(vs >= vu - eps);
        CHECK(pow2_inv(static_cast<unsigned>(sw.start)) <= eps / Rational(2));
    }
}

TEST_CASE("sandwich rejects sequences without the rate hypothesis") {
    ElementSequence alt = ElementSequence::periodic(
        {}, {EPSet::evens(), EPSet::full(Universe::naturals())});
    CHECK_THROWS_AS(sandwich(alt, kDensityOne, Rational(1, 4)), std::invalid_argument);
}

TEST_CASE("sandwich with large eps starts at zero") {
    ElementSequence s = ElementSequence::constant(EPSet::evens());
    SandwichResult sw = sandwich(s, kDensityOne, Rational(2));
    CHECK(sw.start == 0);
    CHECK(sw.tau.equals(s));
    CHECK(sw.ups.equals(s));
}

TEST_CASE("stabilized sequences sandwich themselves") {
    ElementSequence s = ElementSequence::periodic(
        {EPSet::odds()}, {EPSet::evens()});
    SandwichResult sw = sandwich(s, kDensityOne, Rational(1, 8));
    Rational v = limsup_functional(kDensityOne, s);
    CHECK(limsup_functional(kDensityOne, sw.tau) == v);
    CHECK(limsup_functional(kDensityOne, sw.ups) == v);
}
