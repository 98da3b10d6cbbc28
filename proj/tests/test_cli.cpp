#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "chargelab/domination.hpp"
#include "chargelab/instance.hpp"

using namespace chargelab;

namespace {

EPSet random_epset(std::mt19937& rng) {
    std::uniform_int_distribution<int> plen(0, 4), per(1, 5), bit(0, 1);
    int n = plen(rng), p = per(rng);
    std::vector<bool> prefix(static_cast<std::size_t>(n)),
        pattern(static_cast<std::size_t>(p));
    for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i)] = bit(rng);
    for (int i = 0; i < p; ++i) pattern[static_cast<std::size_t>(i)] = bit(rng);
    return EPSet::naturals(prefix, p, pattern);
}

Charge random_charge(std::mt19937& rng) {
    std::uniform_int_distribution<int> natoms(0, 2), ndens(0, 2), pt(0, 8), num(1, 6);
    std::map<long long, Rational> atoms;
    for (int i = natoms(rng); i > 0; --i) atoms[pt(rng)] = Rational(num(rng), 3);
    std::vector<DensityComponent> dens;
    for (int i = ndens(rng); i > 0; --i) {
        dens.push_back({Rational(num(rng), 4), random_epset(rng)});
    }
    return Charge::from_parts(std::move(atoms), std::move(dens));
}

}  // namespace

TEST_CASE("minimal instance") {
    Instance inst = parse_instance_text(
        "[charges]\n"
        "mu = atoms=;densities=1@<prefix=;period=1;pattern=0>\n");
    REQUIRE(inst.charges.size() == 1);
    CHECK(inst.charges[0].first == "mu");
    CHECK(inst.charges[0].second.norm() == Rational(1));
    CHECK(inst.find_charge("mu") != nullptr);
    CHECK(inst.find_charge("nu") == nullptr);
}

TEST_CASE("sections, comments and typed entries") {
    Instance inst = parse_instance_text(
        "# comment\n"
        "\n"
        "[charges]\n"
        "d = atoms=3:2;densities=\n"
        "[sequences]\n"
        "A = prefix=;period=2;pattern=0\n"
        "s = tails=prefix=;period=2;pattern=1\n"
        "[families]\n"
        "F = members=d\n"
        "P = pointmasses=prefix=;period=1;pattern=0\n"
        "[generators]\n"
        "g1 = singletons\n"
        "g2 = blocks=4\n"
        "g3 = geometric\n"
        "g4 = explicit=prefix=;period=2;pattern=0|prefix=;period=2;pattern=1\n"
        "E = prefix=;period=3;pattern=0\n");
    CHECK(inst.sets.size() == 1);
    CHECK(inst.sequences.size() == 1);
    REQUIRE(inst.families.size() == 2);
    CHECK(!inst.families[0].second.is_point_masses());
    CHECK(inst.families[0].second.members().size() == 1);
    CHECK(inst.families[1].second.is_point_masses());
    REQUIRE(inst.seq_gens.size() == 4);
    CHECK(inst.seq_gens[1].second.width() == 4);
    CHECK(inst.seq_gens[3].second.coords().size() == 2);
    CHECK(inst.algebra_gens.size() == 1);
}

TEST_CASE("diagnostics carry category, line and column") {
    auto expect = [](const std::string& text, InstanceErrorKind kind, std::size_t line) {
        try {
            parse_instance_text(text);
            FAIL("expected an InstanceError for: " << text);
        } catch (const InstanceError& e) {
            CHECK(e.kind() == kind);
            CHECK(e.line() == line);
        }
    };
    expect("[what]\n", InstanceErrorKind::Malformed, 1);
    expect("x = 1\n", InstanceErrorKind::Malformed, 1);
    expect("[charges]\noops\n", InstanceErrorKind::Malformed, 2);
    expect("[charges]\nmu = garbage\n", InstanceErrorKind::Malformed, 2);
    expect("[charges]\nmu = atoms=0:1;densities=\nmu = atoms=;densities=\n",
           InstanceErrorKind::Malformed, 3);
    expect("[families]\nF = members=ghost\n", InstanceErrorKind::Malformed, 2);
    expect("[charges]\nbad = atoms=0:-1;densities=\n",
           InstanceErrorKind::InvariantViolation, 2);
    expect("[families]\nP = pointmasses=bits=01\n",
           InstanceErrorKind::InvariantViolation, 2);
    expect("[generators]\ng = explicit=prefix=;period=2;pattern=0|prefix=;period=2;pattern=0\n",
           InstanceErrorKind::InvariantViolation, 2);
    expect("[sequences]\nA = prefix=;period=2;pattern=0\nB = bits=0110\n",
           InstanceErrorKind::UniverseMismatch, 0);
    CHECK_THROWS_AS(parse_instance("/nonexistent/file.txt"), InstanceError);
}

TEST_CASE("serialize then parse is structurally identical") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst;
        std::uniform_int_distribution<int> cnt(0, 3), w(1, 5);
        int nc = 1 + cnt(rng);
        for (int i = 0; i < nc; ++i) {
            inst.charges.emplace_back("c" + std::to_string(i), random_charge(rng));
        }
        for (int i = cnt(rng); i > 0; --i) {
            inst.sets.emplace_back("a" + std::to_string(i), random_epset(rng));
        }
        for (int i = cnt(rng); i > 0; --i) {
            inst.sequences.emplace_back("s" + std::to_string(i),
                                        ElementSequence::tails(random_epset(rng)));
        }
        inst.families.emplace_back(
            "F", ChargeFamily::finite({inst.charges.front().second}));
        inst.families.emplace_back(
            "P", ChargeFamily::point_masses(join(random_epset(rng), EPSet::odds())));
        inst.algebra_gens.emplace_back("E", random_epset(rng));
        inst.seq_gens.emplace_back("g", DisjointSeqGen::blocks(w(rng)));

        Instance back = parse_instance_text(serialize_instance(inst));
        REQUIRE(back.charges.size() == inst.charges.size());
        for (std::size_t i = 0; i < inst.charges.size(); ++i) {
            CHECK(back.charges[i] == inst.charges[i]);
        }
        REQUIRE(back.sets.size() == inst.sets.size());
        for (std::size_t i = 0; i < inst.sets.size(); ++i) {
            CHECK(back.sets[i] == inst.sets[i]);
        }
        REQUIRE(back.sequences.size() == inst.sequences.size());
        for (std::size_t i = 0; i < inst.sequences.size(); ++i) {
            CHECK(back.sequences[i].second.equals(inst.sequences[i].second));
        }
        REQUIRE(back.families.size() == 2);
        CHECK(back.families[0].second.members() == inst.families[0].second.members());
        CHECK(back.families[1].second.support() == inst.families[1].second.support());
        CHECK(back.algebra_gens == inst.algebra_gens);
        REQUIRE(back.seq_gens.size() == 1);
        CHECK(back.seq_gens[0].second.kind() == DisjointSeqGen::Kind::Blocks);
        CHECK(back.seq_gens[0].second.width() == inst.seq_gens[0].second.width());

        // and serialization itself is a fixed point
        CHECK(serialize_instance(back) == serialize_instance(inst));
    }
}

TEST_CASE("negative verdict witnesses re-verify when fed back as text") {
    // domination failure: the reported sequence text parses back into a
    // sequence along which nu vanishes while mu keeps at least eps
    std::mt19937 rng(37);
    int negatives = 0;
    for (int trial = 0; trial < 300 && negatives < 30; ++trial) {
        Charge mu = random_charge(rng);
        Charge nu = random_charge(rng);
        DominationResult r = is_absolutely_continuous(mu, nu);
        if (r.dominated) continue;
        ++negatives;
        ElementSequence w = ElementSequence::parse(r.witness->to_text());
        CHECK(limsup_functional(nu, w) == Rational(0));
        for (long long n = 0; n < 12; ++n) {
            CHECK(mu.evaluate(w.at(n)) >= r.eps);
        }
    }
    CHECK(negatives == 30);
}
