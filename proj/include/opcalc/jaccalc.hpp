#pragma once

#include "opcalc/env.hpp"
#include "opcalc/taut.hpp"

namespace opcalc {

// T_k(m,a) written in the P generators:
//   (-1)^k P_{m,0}(a p0) P_{1,1}(C)^k psi^{k-1}
//   + sum_{i+n+j=k} (-1)^{n+j} C(k,j) S(i+n,i) P_{i+m,i}(a K^n) P_{1,1}(p0+psi)^j
// with x^{-1} = 0.
EnvElem t_from_p(const RingPtr& ring, unsigned k, unsigned m, const RingElem& a);

// Apply a pure P-word element to the tautological model (rightmost letter
// acts first).
TautPoly taut_apply_env(const EnvElem& op, const TautPoly& p);

struct RelationFailure {
    std::string monomial, lhs, rhs;
};

// The commutation relation of the T operators, applied to every tautological
// monomial of weight <= weight_bound. The boundary terms carry the
// Pontryagin factor [p0]^{*m} ("add m p0"), which is invisible on the
// Jacobian and essential on symmetric powers.
std::optional<RelationFailure> relations_T_check(const RingPtr& ring, unsigned k,
                                                 unsigned kp, unsigned m,
                                                 unsigned mp, const RingElem& a,
                                                 const RingElem& ap,
                                                 unsigned weight_bound,
                                                 unsigned arg_degree = 2);

// ---------------------------------------------------------------------------
// Calculus with a formal symmetric-power index N: elements are combinations
// of  x_i(arg) * t^a * u^{[N-c]}  with coefficients polynomial in N over the
// base subring.

struct NPoly {
    std::map<unsigned, RawPoly> c;  // exponent of N -> base-ring coefficient

    bool is_zero() const { return c.empty(); }
    bool operator==(const NPoly&) const = default;
};

struct FormalKey {
    unsigned diag_n = 0;  // 0 = no diagonal symbol
    Mono diag_arg;        // fiber monomial
    unsigned t_exp = 0;
    unsigned u_shift = 0;  // u^{[N - u_shift]}
    auto operator<=>(const FormalKey&) const = default;
};

class FormalElem {
  public:
    FormalElem() = default;
    explicit FormalElem(RingPtr ring) : ring_(std::move(ring)) {}

    static FormalElem fundamental(const RingPtr& ring);  // u^[N]

    const RingPtr& ring() const { return ring_; }
    const std::map<FormalKey, NPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const FormalElem& o) const;

    FormalElem operator+(const FormalElem& o) const;
    FormalElem operator-(const FormalElem& o) const;
    FormalElem operator*(const Rat& s) const;
    FormalElem scale_base(const RingElem& b) const;
    FormalElem scale_N_pow(unsigned e) const;

    FormalElem mul_t(unsigned e) const;
    FormalElem mul_u_div(unsigned a) const;  // u^{[a]} with the binomial in N
    FormalElem mul_diag(unsigned n, const RingElem& a) const;
    FormalElem d_u() const;
    FormalElem d_t() const;

    // P_{i,i}(arg) restricted to CH(S)[t,u^[.]]:
    //   sum_q C(i,q) x_i(arg p0^q) du^{i-q} dt^q
    FormalElem apply_p_ii(unsigned i, const RingElem& arg) const;
    // P_{1,1}(p0) = t (du - psi dt)
    FormalElem apply_p11_point() const;

    // substitute a concrete N (shifted divided indices become towers)
    TautPoly evaluate(unsigned N) const;

    std::string to_string() const;

  private:
    RingPtr ring_;
    std::map<FormalKey, NPoly> terms_;
    void add(const FormalKey& k, const NPoly& c);
};

// sigma_N^* tau_k(C) two ways: (A) the closed Stirling-sum formula,
// (B) T_k(0,C) applied through the operator realization to u^[N].
FormalElem tau_pullback_closed(const RingPtr& ring, unsigned k);
FormalElem tau_pullback_operator(const RingPtr& ring, unsigned k);

// Gross-Schoen modified diagonal sum_{i+m=k} (-1)^m C(k,m) x_i(1) t^m
// (the 0-fold diagonal resolves through pi_* and drops out).
TautPoly gamma_ek(const RingPtr& ring, unsigned k);

// Over a point (psi = 0), with K = (2g-2) p0:
//   sigma_N^* tau_k(C) = Gamma_{e,k} * u^{[N-k]} - 2g delta_{k,2} t u^{[N-1]},
// for k > 1.
bool gs_identity_check(unsigned k, unsigned genus, std::string* witness = nullptr);

// Over a point with general K:
//   sigma_N^* tau_k(C) = Gamma_{e,k} * u^{[N-k]}
//     - sum_{i+m=k-1} (-1)^m C(k,m) C(i+1,2) x_i(K) t^m u^{[N-k+1]}
//     - 2 delta_{k,2} t u^{[N-1]},  k > 1.
bool gs_identity_check_general_K(unsigned k, unsigned genus,
                                 std::string* witness = nullptr);

}  // namespace opcalc
