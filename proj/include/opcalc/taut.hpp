#pragma once

#include <vector>

#include "opcalc/liealg.hpp"

namespace opcalc {

// Diagonal symbol x_n(arg): the n-fold diagonal pushforward of the fiber
// monomial arg. Symbols with arg = 1 carry the divided-power structure
// (x_n(1)^{[d]} with d! x^{[d]} = x^d); their exponent slot stores d.
struct TautSym {
    unsigned n = 1;
    Mono arg;  // fiber part only; base scalars live in the coefficient
    bool divided = false;
    auto fields() const { return std::tie(n, arg, divided); }
    bool operator==(const TautSym& o) const { return fields() == o.fields(); }
    bool operator<(const TautSym& o) const { return fields() < o.fields(); }
};

struct TautMono {
    std::vector<std::pair<TautSym, unsigned>> factors;  // sorted, exps >= 1
    auto operator<=>(const TautMono&) const = default;
};

// Pontryagin polynomials in the diagonal symbols over the base subring, the
// free supercommutative model of the tautological ring. Rings with
// point_collapse identify x_n(point) with x_1(point)^n.
class TautPoly {
  public:
    TautPoly() = default;
    explicit TautPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static TautPoly unit(const RingPtr& ring);
    // x_n(a), linear in a; n = 0 resolves through pi_*.
    static TautPoly diag(const RingPtr& ring, unsigned n, const RingElem& a);
    // x_n(1)^{[d]}
    static TautPoly diag_tower(const RingPtr& ring, unsigned n, unsigned d);

    const RingPtr& ring() const { return ring_; }
    const std::map<TautMono, RawPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const TautPoly& o) const;

    TautPoly operator+(const TautPoly& o) const;
    TautPoly operator-(const TautPoly& o) const;
    TautPoly operator-() const;
    TautPoly operator*(const TautPoly& o) const;
    TautPoly operator*(const Rat& c) const;
    TautPoly scale_base(const RingElem& base) const;

    bool mono_odd(const TautMono& m) const;
    static long weight(const TautMono& m);
    long codim(const TautMono& m) const;

    std::string to_string() const;

  private:
    RingPtr ring_;
    std::map<TautMono, RawPoly> terms_;
    void add(const TautMono& m, const RawPoly& c);
    friend TautPoly taut_apply(unsigned, unsigned, const RingElem&, const TautPoly&);
    friend TautPoly taut_derive(const TautSym&, const TautPoly&);
};

// Formal superderivation with respect to one diagonal symbol.
TautPoly taut_derive(const TautSym& sym, const TautPoly& p);

// Action of P_{m,k}(a) on the tautological model:
//   P_{m,k}(a) = sum over s, compositions k_1+..+k_s = k (k_j >= 1),
//   derivative targets x_{n_j}(a_j):
//     (-1)^{k-s} (k!/s!) prod_j C(n_j, k_j)
//     x_{m-k+sum n_j}(a a_s ... a_1 a0^{k-s}) d_{x_{n_1}(a_1)} .. d_{x_{n_s}(a_s)}
// applied lazily (only derivative targets present in p contribute).
TautPoly taut_apply(unsigned m, unsigned k, const RingElem& a, const TautPoly& p);

// Linear extension over a P-combination.
TautPoly taut_apply(const LieElem& op, const TautPoly& p);

// Apply a composition of P operators, rightmost first.
TautPoly taut_apply_word(const std::vector<PKey>& word, const RingPtr& ring,
                         const TautPoly& p);

// All reduced fiber monomials of degree <= max_degree (brute force over the
// generators; used by sweeps and the operator pretty-printer).
std::vector<Mono> fiber_basis(const RingSpec& ring, unsigned max_degree);

// All tautological monomials of weight <= max_weight whose symbol arguments
// have degree <= max_arg_degree.
std::vector<TautMono> enumerate_taut_monos(const RingSpec& ring,
                                           unsigned max_weight,
                                           unsigned max_arg_degree);

// Human-readable differential-operator expansion of P_{m,k}(a), truncated at
// derivative index n_j <= max_n.
std::string diff_op_text(const RingPtr& ring, unsigned m, unsigned k,
                         const RingElem& a, unsigned max_n);

}  // namespace opcalc
