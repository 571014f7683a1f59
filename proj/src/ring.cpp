#include "opcalc/ring.hpp"

#include <algorithm>
#include <sstream>

namespace opcalc {

unsigned RingSpec::degree(const Mono& m) const {
    unsigned d = 0;
    for (size_t i = 0; i < gens.size(); ++i) d += m[i] * gens[i].degree;
    return d;
}

bool RingSpec::odd_parity(const Mono& m) const {
    unsigned n = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].odd) n += m[i];
    return n % 2 == 1;
}

bool RingSpec::is_base(const Mono& m) const {
    for (size_t i = 0; i < gens.size(); ++i)
        if (m[i] && !gens[i].base) return false;
    return true;
}

Mono RingSpec::base_part(const Mono& m) const {
    Mono b = unit();
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].base) b[i] = m[i];
    return b;
}

Mono RingSpec::fiber_part(const Mono& m) const {
    Mono f = unit();
    for (size_t i = 0; i < gens.size(); ++i)
        if (!gens[i].base) f[i] = m[i];
    return f;
}

std::string RingSpec::mono_name(const Mono& m) const {
    std::string s;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += gens[i].name;
        if (m[i] > 1) s += "^" + std::to_string(int(m[i]));
    }
    return s.empty() ? "1" : s;
}

std::optional<std::pair<Mono, int>> RingSpec::mono_mul(const Mono& a,
                                                       const Mono& b) const {
    Mono r = unit();
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].odd && a[i] + b[i] > 1) return std::nullopt;
        r[i] = static_cast<std::uint8_t>(a[i] + b[i]);
    }
    // Koszul sign: each odd generator of b passes the odd generators of a
    // with larger index.
    int swaps = 0;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (!gens[i].odd || !b[i]) continue;
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (gens[j].odd && a[j]) ++swaps;
    }
    return std::make_pair(std::move(r), swaps % 2 == 0 ? 1 : -1);
}

namespace {

bool divides(const Mono& lhs, const Mono& m) {
    for (size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] > m[i]) return false;
    return true;
}

// Sign with  m = sign * lhs * quotient  as supercommutative monomials.
int unshuffle_sign(const RingSpec& spec, const Mono& lhs, const Mono& q) {
    int swaps = 0;
    for (size_t i = 0; i < spec.gens.size(); ++i) {
        if (!spec.gens[i].odd || !q[i]) continue;
        for (size_t j = i + 1; j < spec.gens.size(); ++j)
            if (spec.gens[j].odd && lhs[j]) ++swaps;
    }
    return swaps % 2 == 0 ? 1 : -1;
}

void add_term(RawPoly& p, const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

// Well-order used for the rewrite-termination check: fewer generator factors,
// then lexicographically smaller exponent vector.
bool rewrite_less(const Mono& a, const Mono& b) {
    unsigned fa = 0, fb = 0;
    for (auto e : a) fa += e;
    for (auto e : b) fb += e;
    if (fa != fb) return fa < fb;
    return a < b;
}

}  // namespace

RawPoly RingSpec::reduce_mono(const Mono& m, const Rat& coeff) const {
    for (const auto& [lhs, rhs] : rules) {
        if (!divides(lhs, m)) continue;
        Mono q = unit();
        for (size_t i = 0; i < gens.size(); ++i)
            q[i] = static_cast<std::uint8_t>(m[i] - lhs[i]);
        int sgn = unshuffle_sign(*this, lhs, q);
        RawPoly out;
        for (const auto& [rm, rc] : rhs) {
            auto prod = mono_mul(rm, q);
            if (!prod) continue;
            RawPoly sub = reduce_mono(prod->first, coeff * rc * sgn * prod->second);
            for (const auto& [sm, sc] : sub) add_term(out, sm, sc);
        }
        return out;
    }
    RawPoly out;
    add_term(out, m, coeff);
    return out;
}

RawPoly RingSpec::reduce(const RawPoly& p) const {
    RawPoly out;
    for (const auto& [m, c] : p) {
        RawPoly r = reduce_mono(m, c);
        for (const auto& [rm, rc] : r) add_term(out, rm, rc);
    }
    return out;
}

std::vector<RawPoly> RingSpec::single_step_reductions(const Mono& m) const {
    std::vector<RawPoly> out;
    for (const auto& [lhs, rhs] : rules) {
        if (!divides(lhs, m)) continue;
        Mono q = unit();
        for (size_t i = 0; i < gens.size(); ++i)
            q[i] = static_cast<std::uint8_t>(m[i] - lhs[i]);
        int sgn = unshuffle_sign(*this, lhs, q);
        RawPoly step;
        for (const auto& [rm, rc] : rhs) {
            auto prod = mono_mul(rm, q);
            if (!prod) continue;
            add_term(step, prod->first, rc * sgn * prod->second);
        }
        out.push_back(std::move(step));
    }
    return out;
}

RingElem RingSpec::zero() const { return RingElem(shared_from_this(), {}); }

RingElem RingSpec::unit_elem() const {
    RawPoly p;
    p.emplace(unit(), 1);
    return RingElem(shared_from_this(), std::move(p));
}

RingElem RingSpec::from_raw(RawPoly p) const {
    return RingElem(shared_from_this(), reduce(p));
}

RingElem RingSpec::gen_elem(const std::string& nm) const {
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].name == nm) {
            Mono m = unit();
            m[i] = 1;
            RawPoly p;
            p.emplace(std::move(m), 1);
            return from_raw(std::move(p));
        }
    }
    throw internal_error("unknown generator '" + nm + "' in ring " + name);
}

RingElem RingSpec::a0_elem() const { return RingElem(shared_from_this(), a0); }
RingElem RingSpec::point_elem() const { return RingElem(shared_from_this(), point); }

RingElem RingSpec::psi_elem() const {
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].base && gens[i].name == "psi") return gen_elem("psi");
    return zero();
}

RingElem RingSpec::pi_star(const RingElem& x) const {
    OPC_REQUIRE(x.ring().get() == this, "pi_star: ring mismatch");
    RawPoly out;
    for (const auto& [m, c] : x.terms()) {
        Mono fib = fiber_part(m);
        Mono bas = base_part(m);
        auto it = pi_star_table.find(fib);
        if (it == pi_star_table.end()) {
            if (pi_star_zero_fallback) continue;
            throw internal_error("pi_star: no table entry for " + mono_name(fib));
        }
        for (const auto& [tm, tc] : it->second) {
            auto prod = mono_mul(bas, tm);
            if (prod) add_term(out, prod->first, c * tc * prod->second);
        }
    }
    return from_raw(std::move(out));
}

RingElem RingSpec::p0_star(const RingElem& x) const {
    OPC_REQUIRE(x.ring().get() == this, "p0_star: ring mismatch");
    OPC_REQUIRE(restriction.size() == gens.size(), "p0_star: table missing");
    RawPoly out;
    for (const auto& [m, c] : x.terms()) {
        RawPoly acc;
        acc.emplace(unit(), c);
        for (size_t i = 0; i < gens.size() && !acc.empty(); ++i)
            for (unsigned e = 0; e < m[i]; ++e) {
                RawPoly next;
                for (const auto& [am, ac] : acc)
                    for (const auto& [rm, rc] : restriction[i]) {
                        auto prod = mono_mul(am, rm);
                        if (prod) add_term(next, prod->first, ac * rc * prod->second);
                    }
                acc = std::move(next);
            }
        for (const auto& [am, ac] : acc) add_term(out, am, ac);
    }
    return from_raw(std::move(out));
}

RingElem RingSpec::pairing(const RingElem& x, const RingElem& y) const {
    return pi_star(x * y);
}

std::string RingSpec::fingerprint() const {
    std::ostringstream os;
    os << name << "|";
    for (const auto& g : gens)
        os << g.name << ":" << (g.odd ? "o" : "e") << g.degree
           << (g.base ? "b" : "f") << ";";
    for (const auto& [lhs, rhs] : rules) {
        os << mono_name(lhs) << "->";
        for (const auto& [m, c] : rhs) os << c << "*" << mono_name(m) << "+";
        os << ";";
    }
    // FNV-1a over the canonical serialization.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

void RingSpec::validate() const {
    for (const auto& g : gens)
        OPC_REQUIRE(!g.name.empty(), "generator with empty name");
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            OPC_REQUIRE(gens[i].name != gens[j].name,
                        "duplicate generator name " + gens[i].name);
    for (const auto& [lhs, rhs] : rules) {
        unsigned d = degree(lhs);
        for (const auto& [m, c] : rhs) {
            OPC_REQUIRE(degree(m) == d, "rule for " + mono_name(lhs) +
                                            " is not degree-homogeneous");
            OPC_REQUIRE(rewrite_less(m, lhs),
                        "rule for " + mono_name(lhs) + " does not terminate");
        }
    }
    OPC_REQUIRE(!odd_parity_raw(a0), "a0 must be even");
}

bool RingSpec::odd_parity_raw(const RawPoly& p) const {
    for (const auto& [m, c] : p)
        if (odd_parity(m)) return true;
    return false;
}

RingElem::RingElem(RingPtr ring, RawPoly terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {}

bool RingElem::operator==(const RingElem& o) const {
    if (is_zero() && o.is_zero()) return true;
    OPC_REQUIRE(!ring_ || !o.ring_ || ring_ == o.ring_, "comparing elements of different rings");
    return terms_ == o.terms_;
}

RingElem RingElem::operator+(const RingElem& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "ring mismatch in +");
    RawPoly p = terms_;
    for (const auto& [m, c] : o.terms_) add_term(p, m, c);
    return RingElem(ring_, std::move(p));
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator-() const {
    RawPoly p;
    for (const auto& [m, c] : terms_) p.emplace(m, -c);
    return RingElem(ring_, std::move(p));
}

RingElem RingElem::operator*(const RingElem& o) const {
    if (is_zero()) return *this;
    if (o.is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "ring mismatch in *");
    RawPoly p;
    for (const auto& [am, ac] : terms_)
        for (const auto& [bm, bc] : o.terms_) {
            auto prod = ring_->mono_mul(am, bm);
            if (prod) add_term(p, prod->first, ac * bc * prod->second);
        }
    return ring_->from_raw(std::move(p));
}

RingElem RingElem::operator*(const Rat& c) const {
    if (c == 0) return ring_ ? ring_->zero() : RingElem();
    RawPoly p;
    for (const auto& [m, k] : terms_) p.emplace(m, k * c);
    return RingElem(ring_, std::move(p));
}

RingElem RingElem::pow(unsigned e) const {
    OPC_REQUIRE(ring_, "pow on null element");
    RingElem r = ring_->unit_elem();
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool RingElem::homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = ring_->degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (ring_->degree(m) != d) return false;
    return true;
}

unsigned RingElem::degree() const {
    OPC_REQUIRE(!terms_.empty(), "degree of zero element");
    OPC_REQUIRE(homogeneous(), "degree of non-homogeneous element");
    return ring_->degree(terms_.begin()->first);
}

bool RingElem::odd_parity() const {
    if (terms_.empty()) return false;
    bool p = ring_->odd_parity(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        OPC_REQUIRE(ring_->odd_parity(m) == p, "mixed parity element");
    return p;
}

bool RingElem::base_only() const {
    for (const auto& [m, c] : terms_)
        if (!ring_->is_base(m)) return false;
    return true;
}

Rat RingElem::scalar_value() const {
    if (terms_.empty()) return 0;
    OPC_REQUIRE(terms_.size() == 1 && terms_.begin()->first == ring_->unit(),
                "scalar_value of non-constant element");
    return terms_.begin()->second;
}

std::string RingElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string mn = ring_->mono_name(m);
        if (mn == "1") {
            os << a;
        } else if (a == 1) {
            os << mn;
        } else {
            os << a << "*" << mn;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Built-in models

RingPtr make_curve_cohomology(unsigned genus) {
    auto spec = std::make_shared<RingSpec>();
    spec->name = "curve-cohomology(g=" + std::to_string(genus) + ")";
    spec->genus = genus;
    spec->point_degree = 2;
    for (unsigned i = 1; i <= genus; ++i)
        spec->gens.push_back({"a" + std::to_string(i), true, 1, false});
    for (unsigned i = 1; i <= genus; ++i)
        spec->gens.push_back({"b" + std::to_string(i), true, 1, false});
    spec->gens.push_back({"pt", false, 2, false});
    size_t G = spec->gens.size(), ipt = G - 1;
    auto mono = [&](std::initializer_list<std::pair<size_t, unsigned>> es) {
        Mono m(G, 0);
        for (auto [i, e] : es) m[i] = static_cast<std::uint8_t>(e);
        return m;
    };
    // Degree-1 products: a_i b_i = pt, everything else 0 (odd squares
    // vanish structurally).
    for (size_t i = 0; i < 2 * genus; ++i)
        for (size_t j = i + 1; j < 2 * genus; ++j) {
            RawPoly rhs;
            if (i < genus && j == i + genus) rhs.emplace(mono({{ipt, 1}}), 1);
            spec->rules.emplace(mono({{i, 1}, {j, 1}}), std::move(rhs));
        }
    // pt annihilates everything of positive degree.
    for (size_t i = 0; i < 2 * genus; ++i)
        spec->rules.emplace(mono({{i, 1}, {ipt, 1}}), RawPoly{});
    spec->rules.emplace(mono({{ipt, 2}}), RawPoly{});
    spec->a0.emplace(mono({{ipt, 1}}), Rat(2 * int(genus) - 2));
    spec->point.emplace(mono({{ipt, 1}}), 1);
    // pi_*: pt -> 1, degree <= 1 -> 0.
    spec->pi_star_table.emplace(mono({}), RawPoly{});
    for (size_t i = 0; i < 2 * genus; ++i)
        spec->pi_star_table.emplace(mono({{i, 1}}), RawPoly{});
    {
        RawPoly one;
        one.emplace(mono({}), 1);
        spec->pi_star_table.emplace(mono({{ipt, 1}}), std::move(one));
    }
    spec->restriction.assign(G, RawPoly{});  // positive degree restricts to 0
    spec->validate();
    return spec;
}

RingPtr make_curve_chow_symbolic(unsigned genus, ChowOptions opts) {
    auto spec = std::make_shared<RingSpec>();
    spec->name = "curve-chow-symbolic(g=" + std::to_string(genus) + ")";
    if (opts.psi_truncation)
        spec->name += "/psi^" + std::to_string(opts.psi_truncation);
    if (opts.canonical_is_point_multiple) spec->name += "/K=(2g-2)p0";
    if (opts.rational) spec->name += "/Q";
    spec->genus = genus;
    spec->point_degree = 1;
    spec->rational = opts.rational;
    spec->point_collapse = true;
    spec->gens.push_back({"K", false, 1, false});
    spec->gens.push_back({"p0", false, 1, false});
    spec->gens.push_back({"psi", false, 1, true});
    auto mono = [&](unsigned k, unsigned p, unsigned s) {
        return Mono{std::uint8_t(k), std::uint8_t(p), std::uint8_t(s)};
    };
    {
        RawPoly rhs;  // p0^2 = -psi p0
        rhs.emplace(mono(0, 1, 1), -1);
        spec->rules.emplace(mono(0, 2, 0), std::move(rhs));
    }
    {
        RawPoly rhs;  // K p0 = psi p0
        rhs.emplace(mono(0, 1, 1), 1);
        spec->rules.emplace(mono(1, 1, 0), std::move(rhs));
    }
    if (opts.canonical_is_point_multiple) {
        RawPoly rhs;
        rhs.emplace(mono(0, 1, 0), Rat(2 * int(genus) - 2));
        spec->rules.emplace(mono(1, 0, 0), std::move(rhs));
    }
    if (opts.psi_truncation)
        spec->rules.emplace(mono(0, 0, opts.psi_truncation), RawPoly{});
    spec->a0.emplace(mono(1, 0, 0), 1);
    spec->point.emplace(mono(0, 1, 0), 1);
    spec->a0 = spec->reduce(spec->a0);
    // pi_*: 1 -> 0, K -> 2g-2, p0 -> 1; higher K powers push to 0 in this
    // declared model (their geometric images are kappa classes the model
    // does not carry).
    spec->pi_star_table.emplace(mono(0, 0, 0), RawPoly{});
    {
        RawPoly v;
        v.emplace(mono(0, 0, 0), Rat(2 * int(genus) - 2));
        spec->pi_star_table.emplace(mono(1, 0, 0), spec->reduce(v));
    }
    {
        RawPoly v;
        v.emplace(mono(0, 0, 0), 1);
        spec->pi_star_table.emplace(mono(0, 1, 0), std::move(v));
    }
    spec->pi_star_zero_fallback = true;
    // p0^*: K -> psi, p0 -> -psi, psi -> psi.
    {
        RawPoly k, p, s;
        k.emplace(mono(0, 0, 1), 1);
        p.emplace(mono(0, 0, 1), -1);
        s.emplace(mono(0, 0, 1), 1);
        spec->restriction = {spec->reduce(k), spec->reduce(p), spec->reduce(s)};
    }
    spec->validate();
    return spec;
}

}  // namespace opcalc
