#include "opcalc/xalg.hpp"

#include <sstream>

#include "opcalc/combinat.hpp"

namespace opcalc {

namespace {
void raw_add(RawPoly& p, const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

RawPoly raw_mul(const RingSpec& ring, const RawPoly& a, const RawPoly& b) {
    RawPoly out;
    for (const auto& [am, ac] : a)
        for (const auto& [bm, bc] : b) {
            auto prod = ring.mono_mul(am, bm);
            if (prod) raw_add(out, prod->first, ac * bc * prod->second);
        }
    return ring.reduce(out);
}
}  // namespace

void XElem::add(const XWord& w, const RawPoly& c) {
    if (c.empty()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    for (const auto& [m, k] : c) raw_add(it->second, m, k);
    if (it->second.empty()) terms_.erase(it);
}

XElem XElem::identity(const RingPtr& ring, const Rat& c) {
    XElem x(ring);
    if (c != 0) x.add({}, {{ring->unit(), c}});
    return x;
}

XElem XElem::sym(const RingPtr& ring, long n, long k, const RingElem& a) {
    XElem x(ring);
    if (n < 0 || k < 0) return x;
    if (n > 2 * long(ring->genus) - k) return x;  // polynomial degree bound
    OPC_REQUIRE(a.ring() == ring, "sym: ring mismatch");
    for (const auto& [mono, c] : a.terms()) {
        OPC_REQUIRE(!ring->odd_parity(mono),
                    "X symbols with odd arguments are not supported");
        Mono base = ring->base_part(mono);
        Mono fiber = ring->fiber_part(mono);
        if (n == 0 && k == 0) {
            RingElem val =
                ring->pi_star(ring->from_raw({{fiber, 1}})) * ring->from_raw({{base, c}});
            x.add({}, val.terms());
            continue;
        }
        if (fiber == ring->unit() && n + k <= 1) continue;  // vanishing symbols
        x.add({XSym{unsigned(n), unsigned(k), fiber}}, {{base, c}});
    }
    return x;
}

bool XElem::operator==(const XElem& o) const {
    if (is_zero() && o.is_zero()) return true;
    OPC_REQUIRE(!ring_ || !o.ring_ || ring_ == o.ring_, "X: ring mismatch");
    return terms_ == o.terms_;
}

XElem XElem::operator+(const XElem& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "X: ring mismatch");
    XElem r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

XElem XElem::operator-(const XElem& o) const { return *this + (o * Rat(-1)); }

XElem XElem::operator*(const XElem& o) const {
    OPC_REQUIRE(is_zero() || o.is_zero() || ring_ == o.ring_, "X: ring mismatch");
    XElem r(ring_ ? ring_ : o.ring());
    for (const auto& [aw, ac] : terms_)
        for (const auto& [bw, bc] : o.terms_) {
            XWord w = aw;
            w.insert(w.end(), bw.begin(), bw.end());
            r.add(w, raw_mul(*r.ring_, ac, bc));
        }
    return r;
}

XElem XElem::operator*(const Rat& c) const {
    XElem r(ring_);
    if (c == 0) return r;
    for (const auto& [w, coeff] : terms_) {
        RawPoly sc;
        for (const auto& [m, k] : coeff) sc.emplace(m, k * c);
        r.terms_.emplace(w, std::move(sc));
    }
    return r;
}

XElem XElem::scale_base(const RingElem& b) const {
    OPC_REQUIRE(b.base_only(), "X scale: not a base element");
    XElem r(ring_);
    for (const auto& [w, coeff] : terms_) r.add(w, raw_mul(*ring_, coeff, b.terms()));
    return r;
}

bool XElem::linear() const {
    for (const auto& [w, c] : terms_)
        if (w.size() > 1) return false;
    return true;
}

std::string XElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << RingElem(ring_, c).to_string() << ")";
        for (const auto& s : w)
            os << "*Xt(" << s.n << "," << s.k << ";" << ring_->mono_name(s.arg)
               << ")";
    }
    return os.str();
}

namespace {
XElem sym_of(const RingPtr& ring, const XSym& s) {
    return XElem::sym(ring, s.n, s.k, ring->from_raw({{s.arg, 1}}));
}
}  // namespace

XElem xrel_lhs_instance(const RingPtr& ring, unsigned n, unsigned k,
                        const RingElem& a, unsigned np, unsigned kp,
                        const RingElem& ap) {
    const RingElem psi = ring->psi_elem();
    XElem out(ring);
    for (unsigned i = 0; i <= std::max({k, kp, n, np}); ++i) {
        RingElem s = psi.pow(i) * Rat(factorial(i));
        if (s.is_zero()) continue;
        Int c1 = combinat::binomial(k, i) * combinat::binomial(np, i);
        if (c1 != 0)
            out = out + (XElem::sym(ring, n, long(k) - long(i), a) *
                         XElem::sym(ring, long(np) - long(i), kp, ap))
                            .scale_base(s * Rat(c1));
        Int c2 = combinat::binomial(kp, i) * combinat::binomial(n, i);
        if (c2 != 0)
            out = out - (XElem::sym(ring, np, long(kp) - long(i), ap) *
                         XElem::sym(ring, long(n) - long(i), k, a))
                            .scale_base(s * Rat(c2));
    }
    return out;
}

XElem xrel_rhs_instance(const RingPtr& ring, unsigned n, unsigned k,
                        const RingElem& a, unsigned np, unsigned kp,
                        const RingElem& ap) {
    const RingElem psi = ring->psi_elem();
    const RingElem B = ring->a0_elem() + ring->point_elem() * Rat(2);
    const RingElem pa = ring->p0_star(a), pap = ring->p0_star(ap);
    XElem out(ring);
    for (unsigned i = 1; i <= std::max(k, kp) + std::max(n, np); ++i) {
        Int c = combinat::binomial(k, i) * combinat::binomial(np, i) -
                combinat::binomial(kp, i) * combinat::binomial(n, i);
        if (c == 0) continue;
        c *= factorial(i);
        if (i % 2 == 0) c = -c;
        RingElem arg = a * ap * B.pow(i - 1);
        if (arg.is_zero()) continue;
        out = out + XElem::sym(ring, long(n) + long(np) - long(i),
                               long(k) + long(kp) - long(i), arg) *
                        Rat(c);
    }
    // boundary terms; psi^{-1} = 0 throughout
    if (np == 0 && kp >= 1 && !pap.is_zero()) {
        Int c = factorial(kp) * combinat::binomial(n, kp);
        RingElem s = pap * psi.pow(kp - 1) * Rat(c);
        if (!s.is_zero())
            out = out + XElem::sym(ring, long(n) - long(kp), k, a).scale_base(s);
    }
    if (n == 0 && k >= 1 && !pa.is_zero()) {
        Int c = factorial(k) * combinat::binomial(np, k);
        RingElem s = pa * psi.pow(k - 1) * Rat(c);
        if (!s.is_zero())
            out = out - XElem::sym(ring, long(np) - long(k), kp, ap).scale_base(s);
    }
    if (k == 0 && n >= 1 && !pa.is_zero()) {
        Int c = factorial(n) * combinat::binomial(kp, n);
        RingElem s = pa * psi.pow(n - 1) * Rat(c);
        if (!s.is_zero())
            out = out + XElem::sym(ring, np, long(kp) - long(n), ap).scale_base(s);
    }
    if (kp == 0 && np >= 1 && !pap.is_zero()) {
        Int c = factorial(np) * combinat::binomial(k, np);
        RingElem s = pap * psi.pow(np - 1) * Rat(c);
        if (!s.is_zero())
            out = out - XElem::sym(ring, n, long(k) - long(np), a).scale_base(s);
    }
    return out;
}

XElem x_bracket(const XElem& a, const XElem& b) {
    OPC_REQUIRE(a.linear() && b.linear(),
                "x_bracket is defined for linear combinations of symbols");
    const RingPtr& ring = a.ring() ? a.ring() : b.ring();
    XElem out(ring);
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [aw, ac] : a.terms()) {
        if (aw.empty()) continue;  // scalars are central
        for (const auto& [bw, bc] : b.terms()) {
            if (bw.empty()) continue;
            const XSym &s = aw.front(), &t = bw.front();
            RingElem ea = ring->from_raw({{s.arg, 1}});
            RingElem eb = ring->from_raw({{t.arg, 1}});
            XElem rhs = xrel_rhs_instance(ring, s.n, s.k, ea, t.n, t.k, eb);
            // subtract the i >= 1 corrections of the relation's left side
            const RingElem psi = ring->psi_elem();
            for (unsigned i = 1; i <= std::max({s.k, t.k, s.n, t.n}); ++i) {
                RingElem sc = psi.pow(i) * Rat(factorial(i));
                if (sc.is_zero()) continue;
                Int c1 = combinat::binomial(s.k, i) * combinat::binomial(t.n, i);
                if (c1 != 0)
                    rhs = rhs - (XElem::sym(ring, s.n, long(s.k) - long(i), ea) *
                                 XElem::sym(ring, long(t.n) - long(i), t.k, eb))
                                    .scale_base(sc * Rat(c1));
                Int c2 = combinat::binomial(t.k, i) * combinat::binomial(s.n, i);
                if (c2 != 0)
                    rhs = rhs + (XElem::sym(ring, t.n, long(t.k) - long(i), eb) *
                                 XElem::sym(ring, long(s.n) - long(i), s.k, ea))
                                    .scale_base(sc * Rat(c2));
            }
            RawPoly coeff = raw_mul(*ring, ac, bc);
            out = out + rhs.scale_base(RingElem(ring, coeff));
        }
    }
    return out;
}

RingElem eta_class(const RingPtr& ring) {
    OPC_REQUIRE(ring->rational, "eta needs rational scalars");
    return ring->a0_elem() * Rat(1, 2) + ring->point_elem() +
           ring->psi_elem() * Rat(1, 2);
}

XTriple x_sl2_triple(const RingPtr& ring) {
    RingElem C = ring->unit_elem();
    XTriple tr;
    tr.e = XElem::sym(ring, 0, 2, C) * Rat(1, 2);
    tr.f = XElem::sym(ring, 2, 0, C) * Rat(-1, 2);
    tr.h = XElem::sym(ring, 1, 1, C) * Rat(-1) +
           XElem::identity(ring, Rat(long(ring->genus)));
    return tr;
}

std::optional<std::string> sl2_verify(unsigned genus, unsigned max_index) {
    ChowOptions opts;
    opts.rational = true;
    RingPtr ring = make_curve_chow_symbolic(genus, opts);
    RingElem eta = eta_class(ring);
    if (ring->pi_star(eta).scalar_value() != Rat(long(genus)))
        return "pi_*(eta) != g";
    XTriple tr = x_sl2_triple(ring);
    auto expect = [&](const XElem& got, const XElem& want,
                      const std::string& what) -> std::optional<std::string> {
        if (got == want) return std::nullopt;
        return what + ": got " + got.to_string() + ", want " + want.to_string();
    };
    if (auto r = expect(x_bracket(tr.e, tr.f), tr.h, "[e,f] = h")) return r;
    if (auto r = expect(x_bracket(tr.h, tr.e), tr.e * Rat(2), "[h,e] = 2e")) return r;
    if (auto r = expect(x_bracket(tr.h, tr.f), tr.f * Rat(-2), "[h,f] = -2f"))
        return r;
    std::vector<RingElem> args = {ring->unit_elem(), ring->a0_elem(),
                                  ring->point_elem()};
    for (unsigned n = 0; n <= max_index; ++n)
        for (unsigned k = 0; k <= max_index; ++k)
            for (const auto& a : args) {
                XElem x = XElem::sym(ring, n, k, a);
                XElem lhs_e = x_bracket(tr.e, x);
                XElem rhs_e =
                    XElem::sym(ring, long(n) - 1, k + 1, a) * Rat(long(n)) -
                    XElem::sym(ring, long(n) - 2, k, a * eta) *
                        Rat(Int(n) * Int(long(n) - 1));
                if (!(lhs_e == rhs_e))
                    return "[e,Xt(" + std::to_string(n) + "," + std::to_string(k) +
                           ";" + a.to_string() + ")]: got " + lhs_e.to_string() +
                           ", want " + rhs_e.to_string();
                XElem lhs_f = x_bracket(tr.f, x);
                XElem rhs_f =
                    XElem::sym(ring, n + 1, long(k) - 1, a) * Rat(long(k)) -
                    XElem::sym(ring, n, long(k) - 2, a * eta) *
                        Rat(Int(k) * Int(long(k) - 1));
                if (!(lhs_f == rhs_f))
                    return "[f,Xt(" + std::to_string(n) + "," + std::to_string(k) +
                           ";" + a.to_string() + ")]: got " + lhs_f.to_string() +
                           ", want " + rhs_f.to_string();
                XElem lhs_h = x_bracket(tr.h, x);
                XElem rhs_h = x * Rat(long(k) - long(n));
                if (!(lhs_h == rhs_h))
                    return "[h,Xt(" + std::to_string(n) + "," + std::to_string(k) +
                           ";" + a.to_string() + ")] != (k-n) Xt";
            }
    return std::nullopt;
}

XElem x_basis_elem(const RingPtr& ring, unsigned n, unsigned k, const RingElem& a) {
    RingElem eta = eta_class(ring);
    XElem out(ring);
    RingElem arg = a;
    for (unsigned i = 0; i <= std::min(n, k); ++i) {
        Int c = factorial(i) * combinat::binomial(n, i) * combinat::binomial(k, i);
        if (i % 2) c = -c;
        out = out + XElem::sym(ring, n - i, k - i, arg) * Rat(c);
        arg = arg * eta;
    }
    return out;
}

std::optional<std::string> fourier_involution_check(unsigned genus,
                                                    unsigned max_nk) {
    ChowOptions opts;
    opts.rational = true;
    RingPtr ring = make_curve_chow_symbolic(genus, opts);
    XTriple tr = x_sl2_triple(ring);
    std::vector<RingElem> args = {ring->unit_elem(), ring->a0_elem(),
                                  ring->point_elem()};
    for (unsigned n = 0; n <= max_nk; ++n)
        for (unsigned k = 0; n + k <= max_nk; ++k)
            for (const auto& a : args) {
                XElem X = x_basis_elem(ring, n, k, a);
                // ladder relations in the X basis
                if (!(x_bracket(tr.e, X) ==
                      x_basis_elem(ring, n ? n - 1 : 0, k + 1, a) * Rat(long(n))))
                    return "e-ladder fails at (" + std::to_string(n) + "," +
                           std::to_string(k) + ")";
                if (!(x_bracket(tr.f, X) ==
                      x_basis_elem(ring, n + 1, k ? k - 1 : 0, a) * Rat(long(k))))
                    return "f-ladder fails at (" + std::to_string(n) + "," +
                           std::to_string(k) + ")";
                if (!(x_bracket(tr.h, X) == X * Rat(long(k) - long(n))))
                    return "h-ladder fails at (" + std::to_string(n) + "," +
                           std::to_string(k) + ")";
                // ad powers: ad(f)^k Xt_{0,n+k}/(n+k)! = X_{k,n}/n! and the
                // mirrored e version
                XElem adf = XElem::sym(ring, 0, n + k, a);
                for (unsigned i = 0; i < k; ++i) adf = x_bracket(tr.f, adf);
                if (!(adf * (Rat(1) / Rat(factorial(n + k))) ==
                      x_basis_elem(ring, k, n, a) * (Rat(1) / Rat(factorial(n)))))
                    return "ad(f)^k identity fails at (" + std::to_string(n) + "," +
                           std::to_string(k) + ")";
                XElem ade = XElem::sym(ring, n + k, 0, a);
                for (unsigned i = 0; i < k; ++i) ade = x_bracket(tr.e, ade);
                if (!(ade * (Rat(1) / Rat(factorial(n + k))) ==
                      x_basis_elem(ring, n, k, a) * (Rat(1) / Rat(factorial(n)))))
                    return "ad(e)^k identity fails at (" + std::to_string(n) + "," +
                           std::to_string(k) + ")";
                // The involution X_{n,k} -> (-1)^k X_{k,n}, e -> -f carries the
                // verified e-ladder instance at (n,k) to the f-ladder instance
                // at (k,n); its square is the identity on the nose. Check the
                // image instance explicitly.
                if (n >= 1) {
                    XElem img = x_basis_elem(ring, k, n, a);
                    if (!(x_bracket(tr.f, img) ==
                          x_basis_elem(ring, k + 1, n - 1, a) * Rat(long(n))))
                        return "involution image of the e-ladder fails at (" +
                               std::to_string(n) + "," + std::to_string(k) + ")";
                }
            }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// coefficient extraction from the T relation

namespace {

// polynomial in the two formal multiplicities with X coefficients
using MKey = std::pair<unsigned, unsigned>;
struct MPoly {
    std::map<MKey, XElem> c;
    void add(const MKey& k, const XElem& x) {
        if (x.is_zero()) return;
        auto it = c.find(k);
        if (it == c.end()) {
            c.emplace(k, x);
            return;
        }
        it->second = it->second + x;
        if (it->second.is_zero()) c.erase(it);
    }
};

// T_kappa(m, b) = sum_nu m^nu / nu! Xt_{nu,kappa}(b) in one variable
std::map<unsigned, XElem> t_expansion(const RingPtr& ring, unsigned kappa,
                                      const RingElem& b) {
    std::map<unsigned, XElem> out;
    for (long nu = 0; nu <= 2 * long(ring->genus) - long(kappa); ++nu) {
        XElem x = XElem::sym(ring, nu, kappa, b) * (Rat(1) / Rat(factorial(nu)));
        if (!x.is_zero()) out.emplace(unsigned(nu), x);
    }
    return out;
}

}  // namespace

std::optional<std::string> x_rel_equiv_check(const RingPtr& ring, unsigned k,
                                             unsigned kp, const RingElem& a,
                                             const RingElem& ap, unsigned n_max) {
    const RingElem psi = ring->psi_elem();
    const RingElem B = ring->a0_elem() + ring->point_elem() * Rat(2);
    const RingElem pa = ring->p0_star(a), pap = ring->p0_star(ap);

    MPoly lhs, rhs;
    // products of T expansions on the left
    for (unsigned i = 0; i <= std::max(k, kp); ++i) {
        RingElem s = psi.pow(i);
        if (s.is_zero()) continue;
        if (Int c = combinat::binomial(k, i); c != 0 && i <= k) {
            auto ta = t_expansion(ring, k - i, a);
            auto tb = t_expansion(ring, kp, ap);
            for (const auto& [nu, xa] : ta)
                for (const auto& [nup, xb] : tb)
                    lhs.add({nu, nup + i}, (xa * xb).scale_base(s * Rat(c)));
        }
        if (Int c = combinat::binomial(kp, i); c != 0 && i <= kp) {
            auto ta = t_expansion(ring, kp - i, ap);
            auto tb = t_expansion(ring, k, a);
            for (const auto& [nup, xa] : ta)
                for (const auto& [nu, xb] : tb)
                    lhs.add({nu + i, nup}, (xa * xb).scale_base(s * Rat(-c)));
        }
    }
    // bracket terms on the right: T_{k+kp-i}(m+m', a a' B^{i-1})
    for (unsigned i = 1; i <= std::max(k, kp); ++i) {
        RingElem arg = a * ap * B.pow(i - 1);
        if (arg.is_zero()) continue;
        for (int part = 0; part < 2; ++part) {
            Int c = part == 0 ? combinat::binomial(k, i) : -combinat::binomial(kp, i);
            if (c == 0) continue;
            if (i % 2 == 0) c = -c;
            auto texp = t_expansion(ring, k + kp - i, arg);
            for (const auto& [nu, x] : texp)
                for (unsigned alpha = 0; alpha <= nu; ++alpha) {
                    // (m+m')^nu / nu! = sum m^alpha m'^{nu-alpha}/(alpha!(nu-alpha)!)
                    Rat split = Rat(combinat::binomial(nu, alpha));
                    MKey key = part == 0
                                   ? MKey{alpha, nu - alpha + i}
                                   : MKey{alpha + i, nu - alpha};
                    rhs.add(key, x * (split * Rat(c)));
                }
        }
    }
    // boundary terms
    if (kp >= 1 && !pap.is_zero()) {
        RingElem s = pap * psi.pow(kp - 1);
        if (!s.is_zero())
            for (const auto& [nu, x] : t_expansion(ring, k, a))
                rhs.add({nu + kp, 0}, x.scale_base(s));
    }
    if (k >= 1 && !pa.is_zero()) {
        RingElem s = pa * psi.pow(k - 1);
        if (!s.is_zero())
            for (const auto& [nup, x] : t_expansion(ring, kp, ap))
                rhs.add({0, nup + k}, x.scale_base(s * Rat(-1)));
    }
    if (k == 0 && !pa.is_zero())
        for (unsigned i = 1; i <= kp; ++i) {
            RingElem s = pa * psi.pow(i - 1) * Rat(combinat::binomial(kp, i));
            if (s.is_zero()) continue;
            for (const auto& [nup, x] : t_expansion(ring, kp - i, ap))
                rhs.add({i, nup}, x.scale_base(s));
        }
    if (kp == 0 && !pap.is_zero())
        for (unsigned i = 1; i <= k; ++i) {
            RingElem s = pap * psi.pow(i - 1) * Rat(combinat::binomial(k, i));
            if (s.is_zero()) continue;
            for (const auto& [nu, x] : t_expansion(ring, k - i, a))
                rhs.add({nu, i}, x.scale_base(s * Rat(-1)));
        }

    for (unsigned n = 0; n <= n_max; ++n)
        for (unsigned np = 0; np <= n_max; ++np) {
            Rat scale = Rat(factorial(n) * factorial(np));
            auto pick = [&](const MPoly& p) {
                auto it = p.c.find({n, np});
                return it == p.c.end() ? XElem(ring) : it->second * scale;
            };
            XElem l_t = pick(lhs), r_t = pick(rhs);
            XElem l_x = xrel_lhs_instance(ring, n, k, a, np, kp, ap);
            XElem r_x = xrel_rhs_instance(ring, n, k, a, np, kp, ap);
            if (!(l_t == l_x))
                return "left sides differ at (n,n')=(" + std::to_string(n) + "," +
                       std::to_string(np) + "): extracted " + l_t.to_string() +
                       ", direct " + l_x.to_string();
            if (!(r_t == r_x))
                return "right sides differ at (n,n')=(" + std::to_string(n) + "," +
                       std::to_string(np) + "): extracted " + r_t.to_string() +
                       ", direct " + r_x.to_string();
        }
    return std::nullopt;
}

}  // namespace opcalc
