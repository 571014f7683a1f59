#include "opcalc/jaccalc.hpp"

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

EnvElem t_from_p(const RingPtr& ring, unsigned k, unsigned m, const RingElem& a) {
    EnvElem out(ring);
    const RingElem psi = ring->psi_elem();
    const RingElem point = ring->point_elem();
    const RingElem K = ring->a0_elem();
    if (k >= 1) {
        RingElem arg = a * point * psi.pow(k - 1);
        if (!arg.is_zero()) {
            EnvElem head = env_from_lie(p_gen(ring, m, 0, arg));
            EnvElem n_op = env_from_lie(p_gen(ring, 1, 1, ring->unit_elem()));
            for (unsigned s = 0; s < k; ++s) head = head * n_op;
            out = out + head * Rat(k % 2 ? -1 : 1);
        }
    }
    EnvElem shifted = env_from_lie(p_gen(ring, 1, 1, point + psi));
    for (unsigned i = 0; i <= k; ++i)
        for (unsigned n = 0; i + n <= k; ++n) {
            unsigned j = k - i - n;
            Int c = combinat::binomial(k, j) * combinat::stirling2(i + n, i);
            if (c == 0) continue;
            if ((n + j) % 2) c = -c;
            RingElem arg = a * K.pow(n);
            if (arg.is_zero()) continue;
            EnvElem term = env_from_lie(p_gen(ring, i + m, i, arg));
            for (unsigned s = 0; s < j; ++s) term = term * shifted;
            out = out + term * Rat(c);
        }
    return out;
}

TautPoly taut_apply_env(const EnvElem& op, const TautPoly& p) {
    TautPoly out(p.ring());
    for (const auto& [word, c] : op.terms()) {
        std::vector<PKey> keys;
        for (const auto& l : word) {
            OPC_REQUIRE(l.kind == Letter::pgen,
                        "taut_apply_env expects a pure P word");
            keys.push_back(l.p);
        }
        out = out + taut_apply_word(keys, p.ring(), p) * c;
    }
    return out;
}

namespace {

// multiplication by [p0]^{*m}: the "add m p0" pushforward
EnvElem point_translation(const RingPtr& ring, unsigned m) {
    EnvElem e(ring);
    if (m == 0) {
        e.add({}, 1);
        return e;
    }
    return env_from_lie(p_gen(ring, m, 0, ring->point_elem()));
}

EnvElem env_scale_base(const EnvElem& x, const RingElem& b) {
    OPC_REQUIRE(b.base_only(), "env_scale_base: not a base element");
    EnvElem out(x.ring());
    if (b.is_zero()) return out;
    const RingSpec& ring = *x.ring();
    for (const auto& [w, c] : x.terms()) {
        OPC_REQUIRE(!w.empty(), "cannot fold a scalar into an empty word");
        OPC_REQUIRE(w.front().kind == Letter::pgen,
                    "cannot fold a scalar into a tower");
        RingElem arg = ring.from_raw({{w.front().p.arg, 1}}) * b;
        for (const auto& [mono, mc] : arg.terms()) {
            Word nw = w;
            nw.front().p.arg = mono;
            out.add(std::move(nw), c * mc);
        }
    }
    return out;
}

}  // namespace

std::optional<RelationFailure> relations_T_check(const RingPtr& ring, unsigned k,
                                                 unsigned kp, unsigned m,
                                                 unsigned mp, const RingElem& a,
                                                 const RingElem& ap,
                                                 unsigned weight_bound,
                                                 unsigned arg_degree) {
    const RingElem psi = ring->psi_elem();
    const RingElem B = ring->a0_elem() + ring->point_elem() * Rat(2);
    const RingElem pa = ring->p0_star(a), pap = ring->p0_star(ap);

    EnvElem lhs(ring), rhs(ring);
    for (unsigned i = 0; i <= std::max(k, kp); ++i) {
        RingElem psi_i = psi.pow(i);
        if (psi_i.is_zero()) continue;
        if (Rat c = Rat(combinat::binomial(k, i) * pow_int(Int(mp), i)); c != 0)
            lhs = lhs + env_scale_base(t_from_p(ring, k - i, m, a) *
                                           t_from_p(ring, kp, mp, ap),
                                       psi_i) *
                            c;
        if (Rat c = Rat(combinat::binomial(kp, i) * pow_int(Int(m), i)); c != 0)
            lhs = lhs - env_scale_base(t_from_p(ring, kp - i, mp, ap) *
                                           t_from_p(ring, k, m, a),
                                       psi_i) *
                            c;
    }
    for (unsigned i = 1; i <= std::max(k, kp); ++i) {
        Int c = combinat::binomial(k, i) * pow_int(Int(mp), i) -
                combinat::binomial(kp, i) * pow_int(Int(m), i);
        if (c == 0) continue;
        if (i % 2 == 0) c = -c;
        RingElem arg = a * ap * B.pow(i - 1);
        if (arg.is_zero()) continue;
        rhs = rhs + t_from_p(ring, k + kp - i, m + mp, arg) * Rat(c);
    }
    // boundary terms with the point translation, psi^{-1} = 0
    if (kp >= 1 && !pap.is_zero()) {
        RingElem s = pap * psi.pow(kp - 1) * Rat(pow_int(Int(m), kp));
        if (!s.is_zero())
            rhs = rhs + env_scale_base(point_translation(ring, mp) *
                                           t_from_p(ring, k, m, a),
                                       s);
    }
    if (k >= 1 && !pa.is_zero()) {
        RingElem s = pa * psi.pow(k - 1) * Rat(pow_int(Int(mp), k));
        if (!s.is_zero())
            rhs = rhs - env_scale_base(point_translation(ring, m) *
                                           t_from_p(ring, kp, mp, ap),
                                       s);
    }
    if (k == 0 && !pa.is_zero())
        for (unsigned i = 1; i <= kp; ++i) {
            RingElem s = pa * psi.pow(i - 1) *
                         Rat(combinat::binomial(kp, i) * pow_int(Int(m), i));
            if (s.is_zero()) continue;
            rhs = rhs + env_scale_base(t_from_p(ring, kp - i, mp, ap) *
                                           point_translation(ring, m),
                                       s);
        }
    if (kp == 0 && !pap.is_zero())
        for (unsigned i = 1; i <= k; ++i) {
            RingElem s = pap * psi.pow(i - 1) *
                         Rat(combinat::binomial(k, i) * pow_int(Int(mp), i));
            if (s.is_zero()) continue;
            rhs = rhs - env_scale_base(t_from_p(ring, k - i, m, a) *
                                           point_translation(ring, mp),
                                       s);
        }

    for (const auto& mono : enumerate_taut_monos(*ring, weight_bound, arg_degree)) {
        TautPoly probe = TautPoly::unit(ring);
        for (const auto& [sym, e] : mono.factors) {
            if (sym.divided) {
                probe = probe * TautPoly::diag_tower(ring, sym.n, e);
            } else {
                TautPoly s =
                    TautPoly::diag(ring, sym.n, ring->from_raw({{sym.arg, 1}}));
                for (unsigned r = 0; r < e; ++r) probe = probe * s;
            }
        }
        TautPoly l = taut_apply_env(lhs, probe);
        TautPoly r = taut_apply_env(rhs, probe);
        if (!(l == r))
            return RelationFailure{probe.to_string(), l.to_string(), r.to_string()};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Formal-N calculus

namespace {

void npoly_add(NPoly& p, unsigned e, const RawPoly& v) {
    if (v.empty()) return;
    auto it = p.c.find(e);
    if (it == p.c.end()) {
        p.c.emplace(e, v);
        return;
    }
    for (const auto& [m, k] : v) raw_add(it->second, m, k);
    if (it->second.empty()) p.c.erase(it);
}

NPoly npoly_mul(const RingSpec& ring, const NPoly& a, const NPoly& b) {
    NPoly out;
    for (const auto& [ea, va] : a.c)
        for (const auto& [eb, vb] : b.c) npoly_add(out, ea + eb, raw_mul(ring, va, vb));
    return out;
}

NPoly npoly_scalar(const RingSpec& ring, const Rat& c) {
    NPoly p;
    if (c != 0) p.c.emplace(0u, RawPoly{{ring.unit(), c}});
    return p;
}

// C(N - shift + a, a) as a polynomial in N
NPoly npoly_binomial_shift(const RingSpec& ring, unsigned shift, unsigned a) {
    // prod_{r=1..a} (N - shift + r) / a!
    std::vector<Rat> coeff{1};  // coefficients in N
    for (unsigned r = 1; r <= a; ++r) {
        std::vector<Rat> next(coeff.size() + 1, 0);
        Rat c0 = Rat(long(r)) - Rat(long(shift));
        for (size_t i = 0; i < coeff.size(); ++i) {
            next[i] += coeff[i] * c0;
            next[i + 1] += coeff[i];
        }
        coeff = std::move(next);
    }
    Rat fact = Rat(factorial(a));
    NPoly out;
    for (size_t i = 0; i < coeff.size(); ++i) {
        Rat c = coeff[i] / fact;
        if (c != 0) out.c.emplace(unsigned(i), RawPoly{{ring.unit(), c}});
    }
    return out;
}

}  // namespace

void FormalElem::add(const FormalKey& k, const NPoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    for (const auto& [e, v] : c.c) npoly_add(it->second, e, v);
    if (it->second.is_zero()) terms_.erase(it);
}

FormalElem FormalElem::fundamental(const RingPtr& ring) {
    FormalElem f(ring);
    f.add(FormalKey{0, ring->unit(), 0, 0}, npoly_scalar(*ring, 1));
    return f;
}

bool FormalElem::operator==(const FormalElem& o) const {
    if (is_zero() && o.is_zero()) return true;
    OPC_REQUIRE(!ring_ || !o.ring_ || ring_ == o.ring_, "formal: ring mismatch");
    return terms_ == o.terms_;
}

FormalElem FormalElem::operator+(const FormalElem& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "formal: ring mismatch");
    FormalElem r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, c);
    return r;
}

FormalElem FormalElem::operator-(const FormalElem& o) const {
    return *this + (o * Rat(-1));
}

FormalElem FormalElem::operator*(const Rat& s) const {
    FormalElem r(ring_);
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) {
        NPoly sc;
        for (const auto& [e, v] : c.c) {
            RawPoly nv;
            for (const auto& [m, cc] : v) nv.emplace(m, cc * s);
            sc.c.emplace(e, std::move(nv));
        }
        r.terms_.emplace(k, std::move(sc));
    }
    return r;
}

FormalElem FormalElem::scale_base(const RingElem& b) const {
    OPC_REQUIRE(b.base_only(), "formal scale: not a base element");
    FormalElem r(ring_);
    for (const auto& [k, c] : terms_) {
        NPoly sc;
        for (const auto& [e, v] : c.c) npoly_add(sc, e, raw_mul(*ring_, v, b.terms()));
        r.add(k, sc);
    }
    return r;
}

FormalElem FormalElem::scale_N_pow(unsigned e) const {
    FormalElem r(ring_);
    for (const auto& [k, c] : terms_) {
        NPoly sc;
        for (const auto& [ee, v] : c.c) sc.c.emplace(ee + e, v);
        r.terms_.emplace(k, std::move(sc));
    }
    return r;
}

FormalElem FormalElem::mul_t(unsigned e) const {
    FormalElem r(ring_);
    for (const auto& [k, c] : terms_) {
        FormalKey nk = k;
        nk.t_exp += e;
        r.add(nk, c);
    }
    return r;
}

FormalElem FormalElem::mul_u_div(unsigned a) const {
    if (a == 0) return *this;
    FormalElem r(ring_);
    for (const auto& [k, c] : terms_) {
        // u^{[a]} u^{[N-s]} = C(N-s+a, a) u^{[N-(s-a)]}
        OPC_REQUIRE(k.u_shift >= a, "u-index rose above N");
        FormalKey nk = k;
        nk.u_shift -= a;
        NPoly factor = npoly_binomial_shift(*ring_, k.u_shift, a);
        r.add(nk, npoly_mul(*ring_, c, factor));
    }
    return r;
}

FormalElem FormalElem::mul_diag(unsigned n, const RingElem& a) const {
    OPC_REQUIRE(a.ring() == ring_, "formal diag: ring mismatch");
    FormalElem out(ring_);
    for (const auto& [mono, mc] : a.terms()) {
        Mono base = ring_->base_part(mono);
        Mono fiber = ring_->fiber_part(mono);
        RingElem base_elem = ring_->from_raw({{base, mc}});
        if (n == 0) {
            RingElem val = ring_->pi_star(ring_->from_raw({{fiber, 1}})) * base_elem;
            out = out + scale_base(val);
            continue;
        }
        bool is_point = ring_->point.size() == 1 &&
                        fiber == ring_->point.begin()->first;
        if (fiber == ring_->unit()) {
            if (n == 1) {
                out = out + mul_u_div(1).scale_base(base_elem);
            } else {
                FormalElem part = scale_base(base_elem);
                FormalElem placed(ring_);
                for (const auto& [k, c] : part.terms()) {
                    OPC_REQUIRE(k.diag_n == 0,
                                "two diagonal symbols in one formal monomial");
                    FormalKey nk = k;
                    nk.diag_n = n;
                    nk.diag_arg = ring_->unit();
                    placed.add(nk, c);
                }
                out = out + placed;
            }
            continue;
        }
        if (is_point && ring_->point_collapse) {
            out = out + mul_t(n).scale_base(base_elem);
            continue;
        }
        FormalElem part = scale_base(base_elem);
        FormalElem placed(ring_);
        for (const auto& [k, c] : part.terms()) {
            OPC_REQUIRE(k.diag_n == 0, "two diagonal symbols in one formal monomial");
            FormalKey nk = k;
            nk.diag_n = n;
            nk.diag_arg = fiber;
            placed.add(nk, c);
        }
        out = out + placed;
    }
    return out;
}

FormalElem FormalElem::d_u() const {
    FormalElem r(ring_);
    for (const auto& [k, c] : terms_) {
        FormalKey nk = k;
        nk.u_shift += 1;
        r.add(nk, c);
    }
    return r;
}

FormalElem FormalElem::d_t() const {
    FormalElem r(ring_);
    for (const auto& [k, c] : terms_) {
        if (k.t_exp == 0) continue;
        FormalKey nk = k;
        nk.t_exp -= 1;
        NPoly sc = npoly_mul(*ring_, c, npoly_scalar(*ring_, Rat(long(k.t_exp))));
        r.add(nk, sc);
    }
    return r;
}

FormalElem FormalElem::apply_p11_point() const {
    RingElem psi = ring_->psi_elem();
    FormalElem r = d_u();
    if (!psi.is_zero()) r = r - d_t().scale_base(psi);
    return r.mul_t(1);
}

FormalElem FormalElem::apply_p_ii(unsigned i, const RingElem& arg) const {
    if (i == 0)
        return scale_base(ring_->pi_star(arg));
    FormalElem out(ring_);
    RingElem point = ring_->point_elem();
    for (unsigned q = 0; q <= i; ++q) {
        RingElem a_q = arg * point.pow(q);
        if (a_q.is_zero()) continue;
        FormalElem v = *this;
        for (unsigned s = 0; s < q && !v.is_zero(); ++s) v = v.d_t();
        for (unsigned s = 0; s < i - q && !v.is_zero(); ++s) v = v.d_u();
        if (v.is_zero()) continue;
        out = out + v.mul_diag(i, a_q) * Rat(combinat::binomial(i, q));
    }
    return out;
}

TautPoly FormalElem::evaluate(unsigned N) const {
    TautPoly out(ring_);
    for (const auto& [k, c] : terms_) {
        OPC_REQUIRE(k.u_shift <= N, "evaluate: N too small for this element");
        TautPoly term = TautPoly::diag_tower(ring_, 1, N - k.u_shift);
        if (k.t_exp) {
            TautPoly t = TautPoly::diag(ring_, 1, ring_->point_elem());
            for (unsigned s = 0; s < k.t_exp; ++s) term = term * t;
        }
        if (k.diag_n)
            term = term * TautPoly::diag(ring_, k.diag_n,
                                         ring_->from_raw({{k.diag_arg, 1}}));
        RawPoly coeff;
        for (const auto& [e, v] : c.c) {
            Rat npow = Rat(pow_int(Int(N), e));
            for (const auto& [m, cc] : v) raw_add(coeff, m, cc * npow);
        }
        RingElem base(ring_, ring_->reduce(coeff));
        out = out + term.scale_base(base);
    }
    return out;
}

std::string FormalElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(";
        bool f2 = true;
        for (const auto& [e, v] : c.c) {
            if (!f2) os << " + ";
            f2 = false;
            os << "(" << RingElem(ring_, v).to_string() << ")";
            if (e) os << "*N^" << e;
        }
        os << ")";
        if (k.diag_n)
            os << "*x(" << k.diag_n << ";" << ring_->mono_name(k.diag_arg) << ")";
        if (k.t_exp) os << "*t^" << k.t_exp;
        os << "*u[N-" << k.u_shift << "]";
    }
    return os.str();
}

FormalElem tau_pullback_closed(const RingPtr& ring, unsigned k) {
    const RingElem psi = ring->psi_elem();
    const RingElem K = ring->a0_elem();
    FormalElem u_N = FormalElem::fundamental(ring);
    FormalElem out(ring);
    if (k >= 1) {
        RingElem s = psi.pow(k - 1) * Rat(k % 2 ? -1 : 1);
        if (!s.is_zero()) out = out + u_N.scale_N_pow(k).scale_base(s);
    }
    for (unsigned i = 0; i <= k; ++i)
        for (unsigned n = 0; i + n <= k; ++n)
            for (unsigned m = 0; i + n + m <= k; ++m)
                for (unsigned p = 0; i + n + m + p <= k; ++p) {
                    unsigned l = k - i - n - m - p;
                    Int c = combinat::stirling2(i + n, i) *
                            combinat::stirling2(m + p, m);
                    if (c == 0) continue;
                    c *= exact_div(factorial(k),
                                   factorial(i + n) * factorial(m + p) * factorial(l),
                                   "tau closed");
                    if ((n + l + m) % 2) c = -c;
                    RingElem s = psi.pow(p + l) * Rat(c);
                    if (s.is_zero()) continue;
                    // Delta_i(K^n) * t^m * u^{[N-m-i]}
                    FormalElem base = FormalElem::fundamental(ring);
                    for (unsigned s2 = 0; s2 < m + i; ++s2) base = base.d_u();
                    FormalElem v = base.mul_t(m).mul_diag(i, K.pow(n));
                    out = out + v.scale_N_pow(l).scale_base(s);
                }
    for (unsigned i = 0; i <= k; ++i)
        for (unsigned n = 0; i + n <= k; ++n)
            for (unsigned m = 0; i + n + m <= k; ++m)
                for (unsigned p = 0; i + n + m + p <= k; ++p)
                    for (unsigned q = 1; i + n + m + p + q <= k; ++q) {
                        unsigned l = k - i - n - m - p - q;
                        Int c = combinat::binomial(i + q, i) *
                                combinat::binomial(m, q) *
                                combinat::stirling2(i + n + q, i + q) *
                                combinat::stirling2(m + p, m);
                        if (c == 0) continue;
                        c *= factorial(q);
                        c *= exact_div(
                            factorial(k),
                            factorial(i + n + q) * factorial(m + p) * factorial(l),
                            "tau closed q");
                        if ((n + l + m + q) % 2) c = -c;
                        RingElem s = psi.pow(p + l + n + q - 1) * Rat(c);
                        if (s.is_zero()) continue;
                        FormalElem base = FormalElem::fundamental(ring);
                        for (unsigned s2 = 0; s2 < m + i; ++s2) base = base.d_u();
                        FormalElem v = base.mul_t(m + i);
                        out = out - v.scale_N_pow(l).scale_base(s);
                    }
    return out;
}

FormalElem tau_pullback_operator(const RingPtr& ring, unsigned k) {
    const RingElem psi = ring->psi_elem();
    const RingElem K = ring->a0_elem();
    FormalElem u_N = FormalElem::fundamental(ring);
    FormalElem out(ring);
    if (k >= 1) {
        RingElem s = psi.pow(k - 1) * Rat(k % 2 ? -1 : 1) *
                     ring->pi_star(ring->point_elem());
        if (!s.is_zero()) out = out + u_N.scale_N_pow(k).scale_base(s);
    }
    for (unsigned i = 0; i <= k; ++i)
        for (unsigned n = 0; i + n <= k; ++n) {
            unsigned j = k - i - n;
            Int c0 = combinat::binomial(k, j) * combinat::stirling2(i + n, i);
            if (c0 == 0) continue;
            if ((n + j) % 2) c0 = -c0;
            // P_{1,1}(p0 + psi)^j = sum_{j1+l=j} C(j,l) psi^l N^l P_{1,1}(p0)^{j1}
            for (unsigned l = 0; l <= j; ++l) {
                unsigned j1 = j - l;
                RingElem s = psi.pow(l) * Rat(combinat::binomial(j, l));
                if (s.is_zero()) continue;
                FormalElem v = u_N;
                for (unsigned r = 0; r < j1; ++r) v = v.apply_p11_point();
                v = v.apply_p_ii(i, K.pow(n));
                out = out + v.scale_N_pow(l).scale_base(s * Rat(c0));
            }
        }
    return out;
}

TautPoly gamma_ek(const RingPtr& ring, unsigned k) {
    TautPoly out(ring);
    TautPoly t = TautPoly::diag(ring, 1, ring->point_elem());
    for (unsigned m = 0; m <= k; ++m) {
        unsigned i = k - m;
        Rat c = Rat(combinat::binomial(k, m));
        if (m % 2) c = -c;
        TautPoly term = TautPoly::diag(ring, i, ring->unit_elem());
        for (unsigned r = 0; r < m; ++r) term = term * t;
        out = out + term * c;
    }
    return out;
}

namespace {

FormalElem gamma_times_u(const RingPtr& ring, unsigned k, unsigned u_shift) {
    FormalElem base = FormalElem::fundamental(ring);
    for (unsigned s = 0; s < u_shift; ++s) base = base.d_u();
    FormalElem out(ring);
    for (unsigned m = 0; m <= k; ++m) {
        unsigned i = k - m;
        Rat c = Rat(combinat::binomial(k, m));
        if (m % 2) c = -c;
        out = out + base.mul_t(m).mul_diag(i, ring->unit_elem()) * c;
    }
    return out;
}

}  // namespace

bool gs_identity_check(unsigned k, unsigned genus, std::string* witness) {
    OPC_REQUIRE(k > 1, "the modified-diagonal identity needs k > 1");
    ChowOptions opts;
    opts.psi_truncation = 1;  // S is a point
    opts.canonical_is_point_multiple = true;
    RingPtr ring = make_curve_chow_symbolic(genus, opts);
    FormalElem lhs = tau_pullback_operator(ring, k);
    FormalElem rhs = gamma_times_u(ring, k, k);
    if (k == 2) {
        FormalElem tu = FormalElem::fundamental(ring).d_u().mul_t(1);
        rhs = rhs - tu * Rat(2 * long(genus));
    }
    if (lhs == rhs) return true;
    if (witness)
        *witness = "lhs = " + lhs.to_string() + " ; rhs = " + rhs.to_string();
    return false;
}

bool gs_identity_check_general_K(unsigned k, unsigned genus, std::string* witness) {
    OPC_REQUIRE(k > 1, "the modified-diagonal identity needs k > 1");
    ChowOptions opts;
    opts.psi_truncation = 1;
    RingPtr ring = make_curve_chow_symbolic(genus, opts);
    FormalElem lhs = tau_pullback_operator(ring, k);
    FormalElem rhs = gamma_times_u(ring, k, k);
    FormalElem base = FormalElem::fundamental(ring);
    for (unsigned s = 0; s < k - 1; ++s) base = base.d_u();
    for (unsigned m = 0; m + 1 <= k; ++m) {
        unsigned i = k - 1 - m;
        Rat c = Rat(combinat::binomial(k, m) * combinat::binomial(i + 1, 2));
        if (m % 2) c = -c;
        if (c == 0) continue;
        rhs = rhs - base.mul_t(m).mul_diag(i, ring->a0_elem()) * c;
    }
    if (k == 2) {
        FormalElem tu = FormalElem::fundamental(ring).d_u().mul_t(1);
        rhs = rhs - tu * Rat(2);
    }
    if (lhs == rhs) return true;
    if (witness)
        *witness = "lhs = " + lhs.to_string() + " ; rhs = " + rhs.to_string();
    return false;
}

}  // namespace opcalc
