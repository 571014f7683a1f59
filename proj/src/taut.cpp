#include "opcalc/taut.hpp"

#include <algorithm>
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

bool sym_odd(const RingSpec& ring, const TautSym& s) {
    return ring.odd_parity(s.arg);
}

}  // namespace

TautPoly TautPoly::unit(const RingPtr& ring) {
    TautPoly p(ring);
    p.add(TautMono{}, {{ring->unit(), 1}});
    return p;
}

void TautPoly::add(const TautMono& m, const RawPoly& c) {
    if (c.empty()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    for (const auto& [mono, coeff] : c) raw_add(it->second, mono, coeff);
    if (it->second.empty()) terms_.erase(it);
}

TautPoly TautPoly::diag(const RingPtr& ring, unsigned n, const RingElem& a) {
    OPC_REQUIRE(a.ring() == ring, "diag: ring mismatch");
    TautPoly out(ring);
    for (const auto& [mono, c] : a.terms()) {
        Mono base = ring->base_part(mono);
        Mono fiber = ring->fiber_part(mono);
        RawPoly coeff{{base, c}};
        if (n == 0) {
            // the 0-fold diagonal is the structure map: push to the base
            RingElem pushed = ring->pi_star(ring->from_raw({{fiber, 1}}));
            TautPoly term(ring);
            RawPoly total;
            for (const auto& [pm, pc] : pushed.terms()) {
                auto prod = ring->mono_mul(base, pm);
                if (prod) raw_add(total, prod->first, c * pc * prod->second);
            }
            term.add(TautMono{}, total);
            out = out + term;
            continue;
        }
        bool fiber_unit = fiber == ring->unit();
        bool is_point = !fiber_unit && ring->point_collapse &&
                        ring->point.size() == 1 &&
                        fiber == ring->point.begin()->first;
        TautMono tm;
        if (is_point) {
            // x_n(point) = x_1(point)^n (the n-fold point is the n-th
            // Pontryagin power of the point class)
            tm.factors.push_back({TautSym{1, fiber, false}, n});
        } else {
            tm.factors.push_back({TautSym{n, fiber, fiber_unit}, fiber_unit ? 1u : 1u});
        }
        TautPoly term(ring);
        term.add(tm, coeff);
        out = out + term;
    }
    return out;
}

TautPoly TautPoly::diag_tower(const RingPtr& ring, unsigned n, unsigned d) {
    TautPoly out(ring);
    if (d == 0) return unit(ring);
    TautMono tm;
    tm.factors.push_back({TautSym{n, ring->unit(), true}, d});
    out.add(tm, {{ring->unit(), 1}});
    return out;
}

bool TautPoly::operator==(const TautPoly& o) const {
    if (is_zero() && o.is_zero()) return true;
    OPC_REQUIRE(!ring_ || !o.ring_ || ring_ == o.ring_,
                "comparing polynomials over different rings");
    return terms_ == o.terms_;
}

TautPoly TautPoly::operator+(const TautPoly& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "ring mismatch in +");
    TautPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, c);
    return r;
}

TautPoly TautPoly::operator-(const TautPoly& o) const { return *this + (-o); }

TautPoly TautPoly::operator-() const {
    TautPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        RawPoly neg;
        for (const auto& [mono, coeff] : c) neg.emplace(mono, -coeff);
        r.terms_.emplace(m, std::move(neg));
    }
    return r;
}

TautPoly TautPoly::operator*(const Rat& c) const {
    TautPoly r(ring_);
    if (c == 0) return r;
    for (const auto& [m, coeff] : terms_) {
        RawPoly sc;
        for (const auto& [mono, k] : coeff) sc.emplace(mono, k * c);
        r.terms_.emplace(m, std::move(sc));
    }
    return r;
}

TautPoly TautPoly::scale_base(const RingElem& base) const {
    OPC_REQUIRE(base.base_only(), "scale_base: not a base element");
    TautPoly r(ring_);
    for (const auto& [m, coeff] : terms_)
        r.add(m, raw_mul(*ring_, coeff, base.terms()));
    return r;
}

bool TautPoly::mono_odd(const TautMono& m) const {
    unsigned n = 0;
    for (const auto& [s, e] : m.factors)
        if (sym_odd(*ring_, s)) n += e;
    return n % 2 == 1;
}

long TautPoly::weight(const TautMono& m) {
    long w = 0;
    for (const auto& [s, e] : m.factors) w += long(s.n) * e;
    return w;
}

long TautPoly::codim(const TautMono& m) const {
    long c = 0;
    for (const auto& [s, e] : m.factors)
        c += (long(ring_->degree(s.arg)) +
              long(ring_->point_degree) * (long(s.n) - 1)) *
             e;
    return c;
}

TautPoly TautPoly::operator*(const TautPoly& o) const {
    if (is_zero()) return *this;
    if (o.is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "ring mismatch in *");
    const RingSpec& ring = *ring_;
    TautPoly out(ring_);
    for (const auto& [am, ac] : terms_)
        for (const auto& [bm, bc] : o.terms_) {
            // Koszul sign: odd symbols of bm pass the larger odd symbols of am.
            int swaps = 0;
            bool dead = false;
            for (const auto& [bs, be] : bm.factors) {
                if (!sym_odd(ring, bs)) continue;
                for (const auto& [as, ae] : am.factors) {
                    if (!sym_odd(ring, as)) continue;
                    if (bs == as) dead = true;
                    if (bs < as) ++swaps;
                }
            }
            if (dead) continue;
            Rat factor = swaps % 2 ? -1 : 1;
            TautMono merged;
            size_t i = 0, j = 0;
            while (i < am.factors.size() || j < bm.factors.size()) {
                if (j == bm.factors.size() ||
                    (i < am.factors.size() && am.factors[i].first < bm.factors[j].first)) {
                    merged.factors.push_back(am.factors[i++]);
                } else if (i == am.factors.size() ||
                           bm.factors[j].first < am.factors[i].first) {
                    merged.factors.push_back(bm.factors[j++]);
                } else {
                    const auto& [sym, ea] = am.factors[i];
                    unsigned eb = bm.factors[j].second;
                    if (sym.divided)
                        factor *= Rat(combinat::binomial(ea + eb, ea));
                    merged.factors.push_back({sym, ea + eb});
                    ++i;
                    ++j;
                }
            }
            if (factor == 0) continue;
            RawPoly coeff = raw_mul(ring, ac, bc);
            for (auto& [mono, c] : coeff) c *= factor;
            out.add(merged, coeff);
        }
    return out;
}

TautPoly taut_derive(const TautSym& sym, const TautPoly& p) {
    const RingSpec& ring = *p.ring();
    bool dsym_odd = sym_odd(ring, sym);
    TautPoly out(p.ring());
    for (const auto& [m, coeff] : p.terms()) {
        unsigned odd_before = 0;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto& [s, e] = m.factors[i];
            if (s == sym) {
                TautMono dm = m;
                Rat c = 1;
                if (s.divided) {
                    if (e == 1)
                        dm.factors.erase(dm.factors.begin() + i);
                    else
                        dm.factors[i].second = e - 1;
                } else if (sym_odd(ring, s)) {
                    dm.factors.erase(dm.factors.begin() + i);
                    if (dsym_odd && odd_before % 2) c = -c;
                } else {
                    c = Rat(e);
                    if (e == 1)
                        dm.factors.erase(dm.factors.begin() + i);
                    else
                        dm.factors[i].second = e - 1;
                }
                RawPoly sc;
                for (const auto& [mono, k] : coeff) sc.emplace(mono, k * c);
                out.add(dm, sc);
                break;  // symbols are distinct within a monomial
            }
            if (sym_odd(ring, s)) odd_before += e;
        }
    }
    return out;
}

TautPoly taut_apply(unsigned m, unsigned k, const RingElem& a, const TautPoly& p) {
    const RingPtr& ring_ptr = p.ring();
    OPC_REQUIRE(a.ring() == ring_ptr, "taut_apply: ring mismatch");
    const RingSpec& ring = *ring_ptr;
    if (k == 0) return TautPoly::diag(ring_ptr, m, a) * p;
    TautPoly out(ring_ptr);
    const RingElem a0 = ring.a0_elem();

    for (const auto& [mono, coeff] : p.terms()) {
        TautPoly single(ring_ptr);
        single.add(mono, coeff);
        // distinct derivative targets available in this monomial
        std::vector<TautSym> syms;
        for (const auto& [s, e] : mono.factors) syms.push_back(s);

        for (unsigned s_count = 1; s_count <= k; ++s_count) {
            std::vector<size_t> pick(s_count, 0);
            if (syms.empty()) break;
            while (true) {
                // ordered tuple (y_1 .. y_s) = syms[pick[0]], ..., syms[pick[s-1]]
                for (const auto& comp :
                     combinat::compositions(k, s_count, 1)) {
                    Int cbin = 1;
                    for (unsigned j = 0; j < s_count && cbin != 0; ++j)
                        cbin *= combinat::binomial(syms[pick[j]].n, comp[j]);
                    if (cbin == 0) continue;
                    // derivative word, rightmost factor first
                    TautPoly derived = single;
                    for (unsigned j = s_count; j-- > 0 && !derived.is_zero();)
                        derived = taut_derive(syms[pick[j]], derived);
                    if (derived.is_zero()) continue;
                    // multiplier x_{m-k+sum n_j}(a a_s ... a_1 a0^{k-s})
                    long idx = long(m) - long(k);
                    RingElem arg = a;
                    for (unsigned j = s_count; j-- > 0;) {
                        idx += syms[pick[j]].n;
                        arg = arg * ring.from_raw({{syms[pick[j]].arg, 1}});
                    }
                    for (unsigned j = 0; j + s_count < k + 0u && j < k - s_count; ++j)
                        arg = arg * a0;
                    if (arg.is_zero()) continue;
                    OPC_REQUIRE(idx >= 0, "taut_apply: negative symbol index");
                    Rat outer = Rat(exact_div(factorial(k), factorial(s_count),
                                              "taut_apply")) *
                                Rat(cbin);
                    if ((k - s_count) % 2) outer = -outer;
                    out = out + TautPoly::diag(ring_ptr, unsigned(idx), arg) *
                                    derived * outer;
                }
                // next tuple
                unsigned j = 0;
                for (; j < s_count; ++j) {
                    if (++pick[j] < syms.size()) break;
                    pick[j] = 0;
                }
                if (j == s_count) break;
            }
        }
    }
    return out;
}

TautPoly taut_apply(const LieElem& op, const TautPoly& p) {
    TautPoly out(p.ring());
    const RingPtr& ring = p.ring();
    for (const auto& [key, c] : op.terms())
        out = out + taut_apply(key.m, key.k, ring->from_raw({{key.arg, 1}}), p) * c;
    return out;
}

TautPoly taut_apply_word(const std::vector<PKey>& word, const RingPtr& ring,
                         const TautPoly& p) {
    TautPoly cur = p;
    for (size_t i = word.size(); i-- > 0;)
        cur = taut_apply(word[i].m, word[i].k, ring->from_raw({{word[i].arg, 1}}), cur);
    return cur;
}

std::vector<Mono> fiber_basis(const RingSpec& ring, unsigned max_degree) {
    std::vector<Mono> out;
    Mono cur = ring.unit();
    auto rec = [&](auto&& self, size_t gi) -> void {
        if (gi == ring.gens.size()) {
            RawPoly red = ring.reduce_mono(cur, 1);
            if (red.size() == 1 && red.begin()->first == cur &&
                red.begin()->second == 1)
                out.push_back(cur);
            return;
        }
        if (ring.gens[gi].base) {
            self(self, gi + 1);
            return;
        }
        unsigned dmax = ring.gens[gi].odd
                            ? 1u
                            : max_degree / std::max(1u, ring.gens[gi].degree);
        for (unsigned e = 0; e <= dmax; ++e) {
            cur[gi] = static_cast<std::uint8_t>(e);
            if (ring.degree(cur) <= max_degree) self(self, gi + 1);
        }
        cur[gi] = 0;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TautMono> enumerate_taut_monos(const RingSpec& ring,
                                           unsigned max_weight,
                                           unsigned max_arg_degree) {
    // available symbols of weight <= max_weight
    std::vector<TautSym> syms;
    for (unsigned n = 1; n <= max_weight; ++n)
        for (const auto& arg : fiber_basis(ring, max_arg_degree)) {
            bool unit_arg = arg == ring.unit();
            if (ring.point_collapse && ring.point.size() == 1 &&
                arg == ring.point.begin()->first && n > 1)
                continue;  // collapsed into powers of the point symbol
            syms.push_back(TautSym{n, arg, unit_arg});
        }
    std::sort(syms.begin(), syms.end());
    std::vector<TautMono> out;
    TautMono cur;
    auto rec = [&](auto&& self, size_t i, long wleft) -> void {
        out.push_back(cur);
        for (size_t j = i; j < syms.size(); ++j) {
            long w = syms[j].n;
            if (w > wleft) continue;
            bool odd = ring.odd_parity(syms[j].arg);
            unsigned emax = odd ? 1 : unsigned(wleft / w);
            for (unsigned e = 1; e <= emax; ++e) {
                cur.factors.push_back({syms[j], e});
                // recurse on later symbols only: keeps monomials canonical
                size_t save = out.size();
                self(self, j + 1, wleft - long(e) * w);
                (void)save;
                cur.factors.pop_back();
            }
        }
    };
    rec(rec, 0, long(max_weight));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string TautPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, coeff] : terms_) {
        if (!first) os << " + ";
        first = false;
        RingElem c(ring_, coeff);
        os << "(" << c.to_string() << ")";
        for (const auto& [s, e] : m.factors) {
            os << "*";
            if (s.divided) {
                os << "xd(" << s.n << "," << e << ")";
            } else {
                os << "x(" << s.n << ";" << ring_->mono_name(s.arg) << ")";
                if (e > 1) os << "^" << e;
            }
        }
    }
    return os.str();
}

std::string diff_op_text(const RingPtr& ring, unsigned m, unsigned k,
                         const RingElem& a, unsigned max_n) {
    std::ostringstream os;
    bool any = false;
    if (k == 0) {
        os << "x(" << m << ";" << a.to_string() << ")";
        return os.str();
    }
    auto args = fiber_basis(*ring, 2);
    for (unsigned s = 1; s <= k; ++s) {
        std::vector<unsigned> n(s, 0);
        std::vector<size_t> ai(s, 0);
        auto emit = [&](const std::vector<unsigned>& comp) {
            Int cbin = 1;
            for (unsigned j = 0; j < s; ++j) cbin *= combinat::binomial(n[j], comp[j]);
            if (cbin == 0) return;
            long idx = long(m) - long(k);
            RingElem arg = a;
            for (unsigned j = s; j-- > 0;) {
                idx += n[j];
                arg = arg * ring->from_raw({{args[ai[j]], 1}});
            }
            for (unsigned j = 0; j < k - s; ++j) arg = arg * ring->a0_elem();
            if (arg.is_zero() || idx < 0) return;
            Rat c = Rat(exact_div(factorial(k), factorial(s), "diff_op_text") * cbin);
            if ((k - s) % 2) c = -c;
            if (any) os << " + ";
            any = true;
            os << c << "*x(" << idx << ";" << arg.to_string() << ")";
            for (unsigned j = 0; j < s; ++j)
                os << "*D[x(" << n[j] << ";" << ring->mono_name(args[ai[j]]) << ")]";
        };
        // iterate over n_j <= max_n and argument choices
        auto loop = [&](auto&& self, unsigned j) -> void {
            if (j == s) {
                for (const auto& comp : combinat::compositions(k, s, 1)) emit(comp);
                return;
            }
            for (n[j] = 1; n[j] <= max_n; ++n[j])
                for (ai[j] = 0; ai[j] < args.size(); ++ai[j]) self(self, j + 1);
        };
        loop(loop, 0);
    }
    if (!any) os << "0";
    os << "  (derivative indices shown up to " << max_n << ")";
    return os.str();
}

}  // namespace opcalc
