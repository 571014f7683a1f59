#include <sstream>

#include "opcalc/ring.hpp"

namespace opcalc {
namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct Loader {
    RingSpec spec;
    std::map<std::string, size_t> gen_index;

    size_t gen(const std::string& name, int line) const {
        auto it = gen_index.find(name);
        if (it == gen_index.end())
            throw internal_error("ring file line " + std::to_string(line) +
                                 ": unknown generator '" + name + "'");
        return it->second;
    }

    // term := [rational '*'] gen ['^' exp] {'*' gen ['^' exp]} | rational | '0' | '1'
    std::pair<Mono, Rat> parse_term(const std::string& text, int line) const {
        Mono m(spec.gens.size(), 0);
        Rat coeff = 1;
        std::istringstream is(text);
        std::string factor;
        bool first = true;
        while (std::getline(is, factor, '*')) {
            factor = trim(factor);
            if (factor.empty())
                throw internal_error("ring file line " + std::to_string(line) +
                                     ": empty factor");
            bool numeric = factor.find_first_not_of("0123456789/-") == std::string::npos;
            if (numeric && first) {
                coeff = Rat(factor);
            } else {
                std::string name = factor;
                unsigned exp = 1;
                if (auto caret = factor.find('^'); caret != std::string::npos) {
                    name = trim(factor.substr(0, caret));
                    exp = std::stoul(trim(factor.substr(caret + 1)));
                }
                if (name == "1") {
                    // unit factor, nothing to record
                } else {
                    size_t gi = gen(name, line);
                    m[gi] = static_cast<std::uint8_t>(m[gi] + exp);
                }
            }
            first = false;
        }
        return {m, coeff};
    }

    RawPoly parse_poly(const std::string& text, int line) const {
        RawPoly p;
        std::string t = trim(text);
        if (t == "0" || t.empty()) return p;
        // split on +/- at top level (no parentheses in this format)
        size_t pos = 0;
        int sign = 1;
        while (pos < t.size()) {
            size_t next = pos;
            while (next < t.size() && !(next > pos && (t[next] == '+' || t[next] == '-')))
                ++next;
            auto [m, c] = parse_term(trim(t.substr(pos, next - pos)), line);
            c *= sign;
            auto it = p.find(m);
            if (it == p.end())
                p.emplace(m, c);
            else if ((it->second += c) == 0)
                p.erase(it);
            if (next < t.size()) sign = t[next] == '-' ? -1 : 1;
            pos = next + 1;
        }
        return p;
    }
};

}  // namespace

RingPtr load_ring_spec(const std::string& text) {
    Loader ld;
    ld.spec.name = "user-ring";
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    struct Pending {
        std::string lhs, rhs;
        int line;
    };
    std::vector<Pending> rules, pushes, restricts;
    std::string a0_text, point_text;
    int a0_line = 0, point_line = 0;
    std::map<std::string, std::string> options;

    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            static const char* known[] = {"generators", "rules", "a0",     "point",
                                          "pushforward", "restriction", "options"};
            bool ok = false;
            for (auto* k : known) ok = ok || section == k;
            if (!ok)
                throw internal_error("ring file line " + std::to_string(lineno) +
                                     ": unknown section [" + section + "]");
            continue;
        }
        if (section == "generators") {
            std::istringstream ls(line);
            std::string name, parity, extra;
            unsigned degree;
            if (!(ls >> name >> parity >> degree))
                throw internal_error("ring file line " + std::to_string(lineno) +
                                     ": expected 'name parity degree [base]'");
            bool odd = parity == "odd";
            if (!odd && parity != "even")
                throw internal_error("ring file line " + std::to_string(lineno) +
                                     ": parity must be even|odd");
            bool base = false;
            if (ls >> extra) {
                if (extra != "base")
                    throw internal_error("ring file line " + std::to_string(lineno) +
                                         ": unknown flag '" + extra + "'");
                base = true;
            }
            ld.spec.gens.push_back({name, odd, degree, base});
            ld.gen_index[name] = ld.spec.gens.size() - 1;
        } else if (section == "rules" || section == "pushforward" ||
                   section == "restriction") {
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw internal_error("ring file line " + std::to_string(lineno) +
                                     ": expected 'lhs = rhs'");
            Pending p{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
            (section == "rules" ? rules
             : section == "pushforward" ? pushes
                                        : restricts)
                .push_back(std::move(p));
        } else if (section == "a0") {
            a0_text = line;
            a0_line = lineno;
        } else if (section == "point") {
            point_text = line;
            point_line = lineno;
        } else if (section == "options") {
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw internal_error("ring file line " + std::to_string(lineno) +
                                     ": expected 'key = value'");
            options[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        } else {
            throw internal_error("ring file line " + std::to_string(lineno) +
                                 ": content before any section header");
        }
    }

    for (const auto& [key, value] : options) {
        if (key == "scalar_mode") {
            if (value == "rational")
                ld.spec.rational = true;
            else if (value != "integer")
                throw internal_error("ring file: scalar_mode must be integer|rational");
        } else if (key == "genus") {
            ld.spec.genus = std::stoul(value);
        } else if (key == "point_degree") {
            ld.spec.point_degree = std::stoul(value);
        } else if (key == "name") {
            ld.spec.name = value;
        } else if (key == "pi_star_fallback_zero") {
            ld.spec.pi_star_zero_fallback = value == "true";
        } else if (key == "point_collapse") {
            ld.spec.point_collapse = value == "true";
        } else {
            throw internal_error("ring file: unknown option '" + key + "'");
        }
    }

    for (const auto& r : rules) {
        auto [lhs, c] = ld.parse_term(r.lhs, r.line);
        if (c != 1)
            throw internal_error("ring file line " + std::to_string(r.line) +
                                 ": rule left side must be a plain monomial");
        RawPoly rhs = ld.parse_poly(r.rhs, r.line);
        ld.spec.rules.emplace(std::move(lhs), std::move(rhs));
    }
    // Right sides reduce against the full rule set.
    for (auto& [lhs, rhs] : ld.spec.rules) rhs = ld.spec.reduce(rhs);

    if (!a0_text.empty()) ld.spec.a0 = ld.spec.reduce(ld.parse_poly(a0_text, a0_line));
    if (!point_text.empty())
        ld.spec.point = ld.spec.reduce(ld.parse_poly(point_text, point_line));
    for (const auto& p : pushes) {
        auto [m, c] = ld.parse_term(p.lhs, p.line);
        if (c != 1)
            throw internal_error("ring file line " + std::to_string(p.line) +
                                 ": pushforward key must be a plain monomial");
        ld.spec.pi_star_table.emplace(m, ld.spec.reduce(ld.parse_poly(p.rhs, p.line)));
    }
    if (!restricts.empty()) {
        ld.spec.restriction.assign(ld.spec.gens.size(), RawPoly{});
        for (const auto& r : restricts) {
            size_t gi = ld.gen(r.lhs, r.line);
            ld.spec.restriction[gi] = ld.spec.reduce(ld.parse_poly(r.rhs, r.line));
        }
    }

    auto spec = std::make_shared<RingSpec>(std::move(ld.spec));
    spec->validate();
    return spec;
}

}  // namespace opcalc
