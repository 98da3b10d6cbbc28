#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chargelab/compactness.hpp"
#include "chargelab/domination.hpp"
#include "chargelab/families.hpp"
#include "chargelab/instance.hpp"

using namespace chargelab;

namespace {

// exit-code contract: 0 affirmative, 1 negative with witness, >= 2 errors
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitUniverse = 4;
constexpr int kExitInvariant = 5;

struct Options {
    std::string instance_path;
    std::optional<Rational> eps;
    Rational t{1, 2};
    std::vector<std::size_t> order;
    int k = 4;
    bool tsv = false;
};

class Report {
  public:
    explicit Report(bool tsv) : tsv_(tsv) {}

    // all fields but the last are labels; the last is the value
    void line(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << (tsv_ ? "\t" : (i + 1 == fields.size() ? " = " : " "));
            out_ << fields[i];
        }
        out_ << "\n";
    }

    std::string str() const { return out_.str(); }

  private:
    bool tsv_;
    std::ostringstream out_;
};

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational require_eps(const Options& opts) {
    if (!opts.eps) throw UsageError("this command requires --eps");
    return *opts.eps;
}

ChargeFamily pick_family(const Instance& inst) {
    if (!inst.families.empty()) return inst.families.front().second;
    std::vector<Charge> members;
    for (const auto& [n, c] : inst.charges) members.push_back(c);
    return ChargeFamily::finite(std::move(members));
}

// a coordinate index at which the (not eventually empty) meet is nonempty
long long nonempty_witness(const ElementSequence& m) {
    long long bound = m.base() + 20 * static_cast<long long>(m.cycle_length()) + 50;
    for (long long n = 0; n <= bound; ++n) {
        if (!m.at(n).is_empty()) return n;
    }
    return -1;
}

int run_command(const std::string& cmd, const Instance& inst, const Options& opts,
                Report& rep) {
    if (cmd == "eval") {
        if (inst.charges.empty() || inst.sets.empty()) {
            return usage_error("eval needs [charges] and set entries in [sequences]");
        }
        for (const auto& [cn, c] : inst.charges) {
            for (const auto& [sn, s] : inst.sets) {
                rep.line({"eval", cn, sn, to_string(c.evaluate(s))});
            }
        }
        return 0;
    }
    if (cmd == "density") {
        if (inst.sets.empty()) return usage_error("density needs set entries");
        for (const auto& [sn, s] : inst.sets) {
            rep.line({"density", sn, to_string(s.density())});
        }
        return 0;
    }
    if (cmd == "ac-check") {
        if (inst.charges.size() < 2) return usage_error("ac-check needs two charges");
        int rc = 0;
        for (const auto& [an, a] : inst.charges) {
            for (const auto& [bn, b] : inst.charges) {
                if (an == bn) continue;
                DominationResult r = is_absolutely_continuous(a, b);
                if (r.dominated) {
                    rep.line({"ac", an, bn, "dominated"});
                } else {
                    rc = kExitNegative;
                    rep.line({"ac", an, bn, "witness"});
                    rep.line({"ac", an, bn, "witness-seq", r.witness->to_text()});
                    rep.line({"ac", an, bn, "witness-eps", to_string(r.eps)});
                }
            }
        }
        return rc;
    }
    if (cmd == "decompose") {
        if (inst.charges.size() < 2) return usage_error("decompose needs two charges");
        for (const auto& [an, a] : inst.charges) {
            for (const auto& [bn, b] : inst.charges) {
                if (an == bn) continue;
                LebesgueDecomposition d = lebesgue_decompose(a, b);
                rep.line({"decompose", an, bn, "ac", d.absolutely_continuous.to_text()});
                rep.line({"decompose", an, bn, "singular", d.singular.to_text()});
                rep.line({"decompose", an, bn, "witness", d.witness.to_text()});
            }
        }
        return 0;
    }
    if (cmd == "control") {
        if (inst.charges.empty()) return usage_error("control needs charges");
        std::vector<Charge> members;
        for (const auto& [n, c] : inst.charges) members.push_back(c);
        Charge mu0 = control_measure(ChargeFamily::finite(members), opts.order);
        std::vector<std::size_t> order = opts.order;
        if (order.empty()) {
            for (std::size_t i = 0; i < members.size(); ++i) order.push_back(i);
        }
        unsigned n = 1;
        for (std::size_t i : order) {
            rep.line({"coefficient", inst.charges[i].first,
                      to_string(pow2_inv(n) / (Rational(1) + members[i].norm()))});
            ++n;
        }
        rep.line({"control", "mu0", mu0.to_text()});
        return 0;
    }
    if (cmd == "orthogonal") {
        if (inst.charges.empty()) return usage_error("orthogonal needs charges");
        std::vector<Charge> members;
        for (const auto& [n, c] : inst.charges) members.push_back(c);
        auto sub = maximal_orthogonal_subfamily(ChargeFamily::finite(members));
        for (const Charge& kept : sub) {
            for (const auto& [n, c] : inst.charges) {
                if (c == kept) {
                    rep.line({"orthogonal", "member", n});
                    break;
                }
            }
        }
        return 0;
    }
    if (cmd == "separator") {
        if (inst.charges.empty() || inst.algebra_gens.empty()) {
            return usage_error("separator needs a charge and algebra generators");
        }
        Rational eps = require_eps(opts);
        const Charge& mu = inst.charges.front().second;
        std::vector<EPSet> gens;
        for (const auto& [n, g] : inst.algebra_gens) gens.push_back(g);
        FiniteSubalgebra alg = generate_subalgebra(gens);
        auto heavy = [&](const EPSet& x) { return mu.evaluate(x) >= eps; };
        EPSet x0 = find_separating_element(alg, heavy, heavy);
        rep.line({"separator", x0.to_text()});
        return 0;
    }
    if (cmd == "singular-witness") {
        if (inst.charges.empty()) return usage_error("singular-witness needs charges");
        const Charge& nu = inst.charges.front().second;
        ChargeFamily fam = [&] {
            if (!inst.families.empty()) return inst.families.front().second;
            std::vector<Charge> rest;
            for (std::size_t i = 1; i < inst.charges.size(); ++i) {
                rest.push_back(inst.charges[i].second);
            }
            return ChargeFamily::finite(std::move(rest));
        }();
        ElementSequence tau = singular_witness_sequence(nu, fam, opts.t);
        rep.line({"singular-witness", tau.to_text()});
        rep.line({"singular-witness", "limit", to_string(limsup_functional(nu, tau))});
        return 0;
    }
    if (cmd == "seq-eval") {
        if (inst.charges.empty() || inst.sequences.empty()) {
            return usage_error("seq-eval needs charges and sequences");
        }
        for (const auto& [cn, c] : inst.charges) {
            for (const auto& [sn, s] : inst.sequences) {
                for (long long n = 0; n < 8; ++n) {
                    rep.line({"seq-eval", cn, sn, std::to_string(n),
                              to_string(c.evaluate(s.at(n)))});
                }
            }
        }
        return 0;
    }
    if (cmd == "limsup") {
        if (inst.charges.empty() || inst.sequences.empty()) {
            return usage_error("limsup needs charges and sequences");
        }
        for (const auto& [cn, c] : inst.charges) {
            for (const auto& [sn, s] : inst.sequences) {
                rep.line({"limsup", cn, sn, to_string(limsup_functional(c, s))});
            }
        }
        return 0;
    }
    if (cmd == "quasidisjoint") {
        if (inst.sequences.size() < 2) {
            return usage_error("quasidisjoint needs two sequences");
        }
        int rc = 0;
        for (std::size_t i = 0; i < inst.sequences.size(); ++i) {
            for (std::size_t j = i + 1; j < inst.sequences.size(); ++j) {
                const auto& [an, a] = inst.sequences[i];
                const auto& [bn, b] = inst.sequences[j];
                if (is_quasi_disjoint(a, b)) {
                    rep.line({"quasidisjoint", an, bn, "yes"});
                } else {
                    rc = kExitNegative;
                    rep.line({"quasidisjoint", an, bn, "no"});
                    rep.line({"quasidisjoint", an, bn, "witness-index",
                              std::to_string(nonempty_witness(seq_meet(a, b)))});
                }
            }
        }
        return rc;
    }
    if (cmd == "bounds") {
        if (inst.sequences.empty()) return usage_error("bounds needs sequences");
        std::vector<ElementSequence> fam;
        for (const auto& [n, s] : inst.sequences) fam.push_back(s);
        SeqBounds b = bounds_mod_finite(fam);
        rep.line({"bounds", "upper", b.upper.to_text()});
        rep.line({"bounds", "lower", b.lower.to_text()});
        return 0;
    }
    if (cmd == "sandwich") {
        if (inst.charges.empty() || inst.sequences.empty()) {
            return usage_error("sandwich needs a charge and sequences");
        }
        Rational eps = require_eps(opts);
        const Charge& nu = inst.charges.front().second;
        for (const auto& [sn, s] : inst.sequences) {
            SandwichResult r = sandwich(s, nu, eps);
            rep.line({"sandwich", sn, "start", std::to_string(r.start)});
            rep.line({"sandwich", sn, "tau", r.tau.to_text()});
            rep.line({"sandwich", sn, "ups", r.ups.to_text()});
        }
        return 0;
    }
    if (cmd == "adfamily") {
        auto fam = almost_disjoint_family(opts.k);
        for (const Branch& b : fam) {
            rep.line({"branch", std::to_string(b.index()), b.to_text()});
        }
        for (std::size_t i = 0; i < fam.size(); ++i) {
            for (std::size_t j = i + 1; j < fam.size(); ++j) {
                rep.line({"intersection", std::to_string(i), std::to_string(j),
                          std::to_string(branch_intersection(fam[i], fam[j]).size())});
            }
        }
        return 0;
    }
    if (cmd == "census") {
        if (inst.charges.empty() || inst.sequences.empty()) {
            return usage_error("census needs a charge and sequences");
        }
        Rational eps = require_eps(opts);
        const Charge& nu = inst.charges.front().second;
        std::vector<ElementSequence> fam;
        for (const auto& [n, s] : inst.sequences) fam.push_back(s);
        CensusReport r = quasi_disjoint_census(fam, nu, eps);
        for (std::size_t i : r.heavy) {
            rep.line({"census", inst.sequences[i].first, to_string(r.limsups[i])});
        }
        rep.line({"census", "count", std::to_string(r.heavy.size())});
        rep.line({"census", "total", to_string(r.total)});
        rep.line({"census", "bound", to_string(r.bound)});
        return 0;
    }
    if (cmd == "cc") {
        if (inst.sets.empty()) return usage_error("cc needs set entries");
        ChargeFamily fam = pick_family(inst);
        std::vector<EPSet> sets;
        for (const auto& [n, s] : inst.sets) sets.push_back(s);
        if (cc_predicate(sets, fam)) {
            rep.line({"cc", "yes"});
            return 0;
        }
        for (const auto& [n, s] : inst.sets) {
            if (!(fam.sup_evaluate(s) > Rational(0))) {
                rep.line({"cc", "no", "witness", n});
                break;
            }
        }
        return kExitNegative;
    }
    if (cmd == "inner") {
        if (inst.charges.empty() || inst.sets.empty() || inst.algebra_gens.empty()) {
            return usage_error("inner needs a charge, sets, and algebra generators");
        }
        const Charge& m = inst.charges.front().second;
        std::vector<EPSet> gens;
        for (const auto& [n, g] : inst.algebra_gens) gens.push_back(g);
        FiniteSubalgebra alg = generate_subalgebra(gens);
        for (const auto& [sn, s] : inst.sets) {
            rep.line({"inner", sn, to_string(inner_measure(m, s, alg))});
        }
        return 0;
    }
    if (cmd == "psi") {
        if (inst.seq_gens.empty() || inst.sets.empty()) {
            return usage_error("psi needs a disjoint-sequence generator and sets");
        }
        ChargeFamily fam = pick_family(inst);
        const DisjointSeqGen& gen = inst.seq_gens.front().second;
        for (const auto& [sn, s] : inst.sets) {
            rep.line({"psi", sn, to_string(psi_functional(fam, gen, s))});
        }
        return 0;
    }
    if (cmd == "usa") {
        if (inst.seq_gens.empty()) return usage_error("usa needs generators");
        ChargeFamily fam = pick_family(inst);
        std::vector<DisjointSeqGen> gens;
        for (const auto& [n, g] : inst.seq_gens) gens.push_back(g);
        UsaVerdict v = usa_test(fam, gens);
        rep.line({"usa", v.to_text()});
        return v.pass ? 0 : kExitNegative;
    }
    if (cmd == "wc-check") {
        if (inst.seq_gens.empty()) return usage_error("wc-check needs generators");
        ChargeFamily fam = pick_family(inst);
        std::vector<DisjointSeqGen> gens;
        for (const auto& [n, g] : inst.seq_gens) gens.push_back(g);
        WcVerdict v = weak_compactness_check(fam, gens);
        rep.line({"wc", v.to_text()});
        return v.kind == WcKind::CompatibleWithWeakCompactness ? 0 : kExitNegative;
    }
    return usage_error("unknown command '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact charge laboratory"};
    std::string cmd;
    std::string eps_text, t_text, order_text, report = "text";
    Options opts;
    app.add_option("command", cmd, "operation to run")->required();
    app.add_option("--instance", opts.instance_path, "instance file path");
    app.add_option("--eps", eps_text, "rational threshold p/q");
    app.add_option("--t", t_text, "rational parameter in (0,1)");
    app.add_option("--order", order_text, "comma-separated permutation indices");
    app.add_option("--k", opts.k, "family size");
    app.add_option("--report", report, "text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}));
    CLI11_PARSE(app, argc, argv);

    opts.tsv = (report == "tsv");
    try {
        if (!eps_text.empty()) opts.eps = parse_rational(eps_text);
        if (!t_text.empty()) opts.t = parse_rational(t_text);
        if (!order_text.empty()) {
            std::istringstream in(order_text);
            std::string tok;
            while (std::getline(in, tok, ',')) {
                opts.order.push_back(static_cast<std::size_t>(std::stoull(tok)));
            }
        }
    } catch (const std::exception& e) {
        return usage_error(std::string("bad flag value: ") + e.what());
    }

    Instance inst;
    const bool needs_instance = (cmd != "adfamily");
    if (needs_instance) {
        if (opts.instance_path.empty()) return usage_error("--instance is required");
        try {
            inst = parse_instance(opts.instance_path);
        } catch (const InstanceError& e) {
            std::cerr << "error: " << e.what() << "\n";
            switch (e.kind()) {
                case InstanceErrorKind::Malformed:
                    return e.line() == 0 ? kExitUsage : kExitMalformed;
                case InstanceErrorKind::UniverseMismatch:
                    return kExitUniverse;
                case InstanceErrorKind::InvariantViolation:
                    return kExitInvariant;
            }
        }
    }

    Report rep(opts.tsv);
    int rc;
    try {
        rc = run_command(cmd, inst, opts, rep);
    } catch (const UsageError& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    std::cout << rep.str();
    return rc;
}
