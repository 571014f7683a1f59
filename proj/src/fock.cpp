#include "opcalc/fock.hpp"

#include <sstream>

#include "opcalc/combinat.hpp"

namespace opcalc {

FockVec FockVec::operator+(const FockVec& o) const {
    FockVec r = *this;
    for (const auto& [b, c] : o.terms_) r.add(b, c);
    return r;
}

FockVec FockVec::operator-(const FockVec& o) const {
    FockVec r = *this;
    for (const auto& [b, c] : o.terms_) r.add(b, -c);
    return r;
}

FockVec FockVec::operator*(const Rat& c) const {
    FockVec r;
    if (c == 0) return r;
    for (const auto& [b, k] : terms_) r.terms_.emplace(b, k * c);
    return r;
}

void FockVec::add(Basis b, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(b);
    if (it == terms_.end()) {
        terms_.emplace(b, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::string FockVec::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c << "*t^" << b.first << "*u[" << b.second << "]";
    }
    return os.str();
}

FockVec fock_t(const FockVec& v) {
    FockVec r;
    for (const auto& [b, c] : v.terms()) r.add({b.first + 1, b.second}, c);
    return r;
}

FockVec fock_u_div(unsigned d, const FockVec& v) {
    FockVec r;
    for (const auto& [b, c] : v.terms())
        r.add({b.first, b.second + d},
              c * Rat(combinat::binomial(b.second + d, d)));
    return r;
}

FockVec fock_dt_div(unsigned n, const FockVec& v) {
    FockVec r;
    for (const auto& [b, c] : v.terms()) {
        if (b.first < n) continue;
        r.add({b.first - n, b.second}, c * Rat(combinat::binomial(b.first, n)));
    }
    return r;
}

FockVec fock_du(const FockVec& v) {
    FockVec r;
    for (const auto& [b, c] : v.terms()) {
        if (b.second == 0) continue;
        r.add({b.first, b.second - 1}, c);
    }
    return r;
}

FockVec fock_e(const FockVec& v) { return fock_t(fock_du(v)); }
FockVec fock_f(const FockVec& v) { return fock_u_div(1, fock_dt_div(1, v)); }

FockVec fock_h(const FockVec& v) {
    FockVec r;
    for (const auto& [b, c] : v.terms())
        r.add(b, c * Rat(Int(b.first) - Int(b.second)));
    return r;
}

FockVec lefschetz_power(unsigned m, unsigned n) {
    OPC_REQUIRE(n >= m, "lefschetz_power needs n >= m");
    FockVec v = FockVec::basis(m, n);
    for (unsigned i = 0; i < n - m; ++i) v = fock_e(v);
    return v;
}

}  // namespace opcalc
