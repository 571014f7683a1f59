#pragma once

#include <map>
#include <string>
#include <utility>

#include "opcalc/numeric.hpp"

namespace opcalc {

// The divided-power module Z[t, u^[.]] over the coefficient group Z:
// elements are combinations of basis vectors t^m u^[n].
class FockVec {
  public:
    using Basis = std::pair<unsigned, unsigned>;  // (t exponent, divided u index)

    static FockVec basis(unsigned m, unsigned n) {
        FockVec v;
        v.terms_.emplace(Basis{m, n}, 1);
        return v;
    }

    const std::map<Basis, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const FockVec& o) const { return terms_ == o.terms_; }

    FockVec operator+(const FockVec& o) const;
    FockVec operator-(const FockVec& o) const;
    FockVec operator*(const Rat& c) const;

    void add(Basis b, const Rat& c);
    std::string to_string() const;

  private:
    std::map<Basis, Rat> terms_;
};

// Generators of the divided Heisenberg action: t and u^{[d]} multiply,
// dt^{[n]}(t^i u^[j]) = C(i,n) t^{i-n} u^[j], du(u^[n]) = u^[n-1].
FockVec fock_t(const FockVec& v);
FockVec fock_u_div(unsigned d, const FockVec& v);
FockVec fock_dt_div(unsigned n, const FockVec& v);
FockVec fock_du(const FockVec& v);

// sl2 triple e = t du, f = u dt, h = t dt - u du.
FockVec fock_e(const FockVec& v);
FockVec fock_f(const FockVec& v);
FockVec fock_h(const FockVec& v);

// e^{n-m}(t^m u^[n]) for n >= m; throws otherwise.
FockVec lefschetz_power(unsigned m, unsigned n);

}  // namespace opcalc
