#include "chargelab/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace chargelab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// sort a module rejection into its exit-code category by message content
InstanceErrorKind classify(const std::string& msg) {
    if (msg.find("universe") != std::string::npos) {
        return InstanceErrorKind::UniverseMismatch;
    }
    for (const char* key : {"negative", "guard", "outside", "disjoint", "infinite",
                            "out of range", "positive"}) {
        if (msg.find(key) != std::string::npos) {
            return InstanceErrorKind::InvariantViolation;
        }
    }
    return InstanceErrorKind::Malformed;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

bool looks_like_sequence(const std::string& value) {
    return value.rfind("tails=", 0) == 0 || value.find("=[") != std::string::npos;
}

}  // namespace

const Charge* Instance::find_charge(const std::string& name) const {
    for (const auto& [n, c] : charges) {
        if (n == name) return &c;
    }
    return nullptr;
}

Instance parse_instance_text(const std::string& text) {
    Instance inst;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    std::vector<std::string> names;  // all entry names, for duplicate detection

    auto fail = [&](InstanceErrorKind kind, std::size_t col, const std::string& msg) {
        throw InstanceError(kind, lineno, col, msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                fail(InstanceErrorKind::Malformed, t.size(), "unterminated section header");
            }
            section = t.substr(1, t.size() - 2);
            if (section != "charges" && section != "sequences" && section != "families" &&
                section != "generators") {
                fail(InstanceErrorKind::Malformed, 2, "unknown section [" + section + "]");
            }
            continue;
        }
        if (section.empty()) {
            fail(InstanceErrorKind::Malformed, 1, "entry before any section header");
        }
        std::size_t eq = line.find('=');
        std::size_t teq = t.find('=');
        if (teq == std::string::npos) {
            fail(InstanceErrorKind::Malformed, 1, "entry needs 'name = value'");
        }
        std::string name = trim(t.substr(0, teq));
        std::string value = trim(t.substr(teq + 1));
        const std::size_t vcol = eq + 2;
        if (name.empty()) fail(InstanceErrorKind::Malformed, 1, "empty entry name");
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            fail(InstanceErrorKind::Malformed, 1, "duplicate name '" + name + "'");
        }
        names.push_back(name);

        try {
            if (section == "charges") {
                inst.charges.emplace_back(name, Charge::parse(value));
            } else if (section == "sequences") {
                if (looks_like_sequence(value)) {
                    inst.sequences.emplace_back(name, ElementSequence::parse(value));
                } else {
                    inst.sets.emplace_back(name, EPSet::parse(value));
                }
            } else if (section == "families") {
                if (value.rfind("members=", 0) == 0) {
                    std::vector<Charge> members;
                    std::string body = value.substr(8);
                    if (!body.empty()) {
                        for (const std::string& raw : split(body, ',')) {
                            std::string ref = trim(raw);
                            const Charge* c = inst.find_charge(ref);
                            if (!c) {
                                fail(InstanceErrorKind::Malformed, vcol,
                                     "unknown charge '" + ref + "' in family");
                            }
                            members.push_back(*c);
                        }
                    }
                    inst.families.emplace_back(name, ChargeFamily::finite(members));
                } else if (value.rfind("pointmasses=", 0) == 0) {
                    inst.families.emplace_back(
                        name, ChargeFamily::point_masses(EPSet::parse(value.substr(12))));
                } else {
                    fail(InstanceErrorKind::Malformed, vcol,
                         "family needs 'members=' or 'pointmasses='");
                }
            } else {  // generators
                if (value == "singletons") {
                    inst.seq_gens.emplace_back(name, DisjointSeqGen::singletons());
                } else if (value.rfind("blocks=", 0) == 0) {
                    inst.seq_gens.emplace_back(
                        name, DisjointSeqGen::blocks(std::stoll(value.substr(7))));
                } else if (value == "geometric") {
                    inst.seq_gens.emplace_back(name, DisjointSeqGen::geometric_blocks());
                } else if (value.rfind("explicit=", 0) == 0) {
                    std::vector<EPSet> coords;
                    for (const std::string& part : split(value.substr(9), '|')) {
                        coords.push_back(EPSet::parse(trim(part)));
                    }
                    inst.seq_gens.emplace_back(
                        name, DisjointSeqGen::explicit_finite(std::move(coords)));
                } else {
                    inst.algebra_gens.emplace_back(name, EPSet::parse(value));
                }
            }
        } catch (const InstanceError&) {
            throw;
        } catch (const std::exception& e) {
            fail(classify(e.what()), vcol, e.what());
        }
    }

    // cross-entry universe coherence: everything sharing the Naturals/Finite
    // divide must agree before any command mixes entries
    std::optional<Universe> u;
    auto check_u = [&](Universe v, const std::string& name) {
        if (!u) {
            u = v;
        } else if (!(*u == v)) {
            throw InstanceError(InstanceErrorKind::UniverseMismatch, 0, 0,
                                "entry '" + name + "' uses a different universe");
        }
    };
    for (const auto& [n, c] : inst.charges) check_u(c.universe(), n);
    for (const auto& [n, s] : inst.sets) check_u(s.universe(), n);
    for (const auto& [n, s] : inst.sequences) check_u(s.universe(), n);
    for (const auto& [n, f] : inst.families) check_u(f.universe(), n);
    for (const auto& [n, g] : inst.algebra_gens) check_u(g.universe(), n);

    return inst;
}

Instance parse_instance(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw InstanceError(InstanceErrorKind::Malformed, 0, 0,
                            "cannot open instance file " + path);
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_instance_text(buf.str());
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    if (!inst.charges.empty()) {
        out << "[charges]\n";
        for (const auto& [n, c] : inst.charges) out << n << " = " << c.to_text() << "\n";
    }
    if (!inst.sets.empty() || !inst.sequences.empty()) {
        out << "[sequences]\n";
        for (const auto& [n, s] : inst.sets) out << n << " = " << s.to_text() << "\n";
        for (const auto& [n, s] : inst.sequences) out << n << " = " << s.to_text() << "\n";
    }
    if (!inst.families.empty()) {
        out << "[families]\n";
        for (const auto& [n, f] : inst.families) {
            if (f.is_point_masses()) {
                out << n << " = pointmasses=" << f.support().to_text() << "\n";
            } else {
                // members are re-emitted as inline charges under fresh names
                // by serialize callers; here reference by position
                out << n << " = members=";
                for (std::size_t i = 0; i < f.members().size(); ++i) {
                    const Charge& m = f.members()[i];
                    bool found = false;
                    for (const auto& [cn, c] : inst.charges) {
                        if (c == m) {
                            out << (i ? "," : "") << cn;
                            found = true;
                            break;
                        }
                    }
                    if (!found) out << (i ? "," : "") << "?";
                }
                out << "\n";
            }
        }
    }
    if (!inst.algebra_gens.empty() || !inst.seq_gens.empty()) {
        out << "[generators]\n";
        for (const auto& [n, g] : inst.algebra_gens) out << n << " = " << g.to_text() << "\n";
        for (const auto& [n, g] : inst.seq_gens) {
            out << n << " = ";
            switch (g.kind()) {
                case DisjointSeqGen::Kind::Singletons:
                    out << "singletons";
                    break;
                case DisjointSeqGen::Kind::Blocks:
                    out << "blocks=" << g.width();
                    break;
                case DisjointSeqGen::Kind::GeometricBlocks:
                    out << "geometric";
                    break;
                case DisjointSeqGen::Kind::ExplicitFinite:
                    out << "explicit=";
                    for (std::size_t i = 0; i < g.coords().size(); ++i) {
                        out << (i ? "|" : "") << g.coords()[i].to_text();
                    }
                    break;
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace chargelab
