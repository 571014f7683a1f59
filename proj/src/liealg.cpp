#include "opcalc/liealg.hpp"

#include <sstream>

#include "opcalc/combinat.hpp"

namespace opcalc {

bool LieElem::operator==(const LieElem& o) const {
    if (is_zero() && o.is_zero()) return true;
    OPC_REQUIRE(!ring_ || !o.ring_ || ring_ == o.ring_,
                "comparing elements over different rings");
    return terms_ == o.terms_;
}

LieElem LieElem::operator+(const LieElem& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "ring mismatch in +");
    LieElem r = *this;
    for (const auto& [key, c] : o.terms_) r.add(key, c);
    return r;
}

LieElem LieElem::operator-(const LieElem& o) const { return *this + (-o); }

LieElem LieElem::operator-() const {
    LieElem r(ring_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
}

LieElem LieElem::operator*(const Rat& c) const {
    LieElem r(ring_);
    if (c == 0) return r;
    for (const auto& [key, k] : terms_) r.terms_.emplace(key, k * c);
    return r;
}

void LieElem::add(const PKey& key, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::string LieElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
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
        if (a != 1) os << a << "*";
        os << "P(" << key.m << "," << key.k << ";" << ring_->mono_name(key.arg)
           << ")";
    }
    return os.str();
}

LieElem p_gen(const RingPtr& ring, unsigned m, unsigned k, const RingElem& a) {
    OPC_REQUIRE(a.ring() == ring, "p_gen: ring mismatch");
    LieElem r(ring);
    for (const auto& [mono, c] : a.terms()) r.add(PKey{m, k, mono}, c);
    return r;
}

bool pkey_odd(const RingSpec& ring, const PKey& key) {
    return ring.odd_parity(key.arg);
}

BiDegree bidegree(const RingSpec& ring, const PKey& key) {
    return {long(ring.degree(key.arg)) +
                long(ring.point_degree) * (long(key.m) - 1),
            long(key.m) - long(key.k)};
}

LieElem bracket(const LieElem& x, const LieElem& y) {
    OPC_REQUIRE(x.is_zero() || y.is_zero() || x.ring() == y.ring(),
                "bracket: ring mismatch");
    const RingPtr& ring = x.ring() ? x.ring() : y.ring();
    LieElem out(ring);
    if (x.is_zero() || y.is_zero()) return out;
    const RingElem a0 = ring->a0_elem();
    for (const auto& [p, cp] : x.terms())
        for (const auto& [q, cq] : y.terms()) {
            unsigned imax = std::max(std::min(p.k, q.m), std::min(p.m, q.k));
            RingElem arg = ring->from_raw({{p.arg, 1}}) * ring->from_raw({{q.arg, 1}});
            for (unsigned i = 1; i <= imax; ++i) {
                Int coeff = combinat::binomial(p.k, i) * combinat::binomial(q.m, i) -
                            combinat::binomial(p.m, i) * combinat::binomial(q.k, i);
                if (coeff != 0) {
                    coeff *= factorial(i);
                    if (i % 2 == 0) coeff = -coeff;
                    OPC_REQUIRE(p.m + q.m >= i && p.k + q.k >= i,
                                "bracket produced a negative index");
                    for (const auto& [mono, c] : arg.terms())
                        out.add(PKey{p.m + q.m - i, p.k + q.k - i, mono},
                                cp * cq * c * Rat(coeff));
                }
                if (i < imax) arg = arg * a0;
            }
        }
    return out;
}

LieElem jacobi_defect(const LieElem& x, bool x_odd, const LieElem& y, bool y_odd,
                      const LieElem& z) {
    LieElem d = bracket(x, bracket(y, z)) - bracket(bracket(x, y), z);
    LieElem tail = bracket(y, bracket(x, z));
    return (x_odd && y_odd) ? d + tail : d - tail;
}

std::pair<LieElem, RingElem> centralize(const LieElem& x) {
    const RingPtr& ring = x.ring();
    LieElem rest(ring);
    RingElem scalar = ring ? ring->zero() : RingElem();
    for (const auto& [key, c] : x.terms()) {
        if (key.m == 0 && key.k == 0)
            scalar = scalar + ring->pi_star(ring->from_raw({{key.arg, 1}})) * c;
        else
            rest.add(key, c);
    }
    return {rest, scalar};
}

RingElem theta_characteristic(const RingPtr& ring) {
    RingElem a0 = ring->a0_elem();
    RawPoly half;
    for (const auto& [m, c] : a0.terms()) {
        Rat h = c / 2;
        if (!ring->rational)
            OPC_REQUIRE(is_integer(h),
                        "a0 is not 2-divisible in integer mode; no theta "
                        "characteristic available");
        half.emplace(m, h);
    }
    return ring->from_raw(std::move(half));
}

LieElem L_gen(const RingPtr& ring, unsigned m, unsigned k, const RingElem& a,
              const RingElem& chi) {
    LieElem r = p_gen(ring, m, k, a);
    if (m > 0 && k > 0)
        r = r - p_gen(ring, m - 1, k - 1, chi * a) * Rat(Int(m) * Int(k));
    return r;
}

std::map<PKey, Rat> to_L_basis(const LieElem& x, const RingElem& chi) {
    const RingPtr& ring = x.ring();
    std::map<PKey, Rat> lcoords;
    std::map<PKey, Rat> pending(x.terms());
    while (!pending.empty()) {
        // Any key works; taking the last keeps large (m+k) first so the
        // corrections strictly descend.
        auto it = std::prev(pending.end());
        PKey key = it->first;
        Rat c = it->second;
        pending.erase(it);
        if (c == 0) continue;
        auto lit = lcoords.find(key);
        if (lit == lcoords.end())
            lcoords.emplace(key, c);
        else if ((lit->second += c) == 0)
            lcoords.erase(lit);
        if (key.m > 0 && key.k > 0) {
            RingElem corr = chi * ring->from_raw({{key.arg, 1}}) *
                            Rat(Int(key.m) * Int(key.k));
            for (const auto& [mono, cc] : corr.terms()) {
                PKey down{key.m - 1, key.k - 1, mono};
                auto pit = pending.find(down);
                if (pit == pending.end())
                    pending.emplace(down, c * cc);
                else if ((pit->second += c * cc) == 0)
                    pending.erase(pit);
            }
        }
    }
    return lcoords;
}

LieElem from_L_basis(const RingPtr& ring, const std::map<PKey, Rat>& lcoords,
                     const RingElem& chi) {
    LieElem out(ring);
    for (const auto& [key, c] : lcoords)
        out = out + L_gen(ring, key.m, key.k, ring->from_raw({{key.arg, 1}}), chi) * c;
    return out;
}

}  // namespace opcalc
