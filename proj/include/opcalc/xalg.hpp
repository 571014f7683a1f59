#pragma once

#include <optional>

#include "opcalc/ring.hpp"

namespace opcalc {

// Inert operator symbol on the Jacobian side. Words are never reordered;
// every identity is an instance of the quadratic exchange relation.
struct XSym {
    unsigned n = 0, k = 0;
    Mono arg;  // fiber monomial
    auto operator<=>(const XSym&) const = default;
};
using XWord = std::vector<XSym>;

class XElem {
  public:
    XElem() = default;
    explicit XElem(RingPtr ring) : ring_(std::move(ring)) {}

    static XElem identity(const RingPtr& ring, const Rat& c = 1);
    // Symbol with the eager rules applied: vanishing for n > 2g-k or negative
    // indices, the degree-zero operator resolving to pi_*(a) id, and the
    // vanishing of the n+k <= 1 symbols with fundamental-class argument.
    static XElem sym(const RingPtr& ring, long n, long k, const RingElem& a);

    const RingPtr& ring() const { return ring_; }
    const std::map<XWord, RawPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const XElem& o) const;

    XElem operator+(const XElem& o) const;
    XElem operator-(const XElem& o) const;
    XElem operator*(const XElem& o) const;  // word concatenation
    XElem operator*(const Rat& c) const;
    XElem scale_base(const RingElem& b) const;

    bool linear() const;  // words of length <= 1 only
    std::string to_string() const;

  private:
    RingPtr ring_;
    std::map<XWord, RawPoly> terms_;
    void add(const XWord& w, const RawPoly& c);
    friend XElem x_bracket(const XElem&, const XElem&);
};

// The exchange relation instance at (n,k,a),(n',k',a'): left side
//   sum_i psi^i i! (C(k,i)C(n',i) Xt_{n,k-i}(a) Xt_{n'-i,k'}(a')
//                  - C(k',i)C(n,i) Xt_{n',k'-i}(a') Xt_{n-i,k}(a)),
// right side the bracket terms plus four boundary terms.
XElem xrel_lhs_instance(const RingPtr& ring, unsigned n, unsigned k,
                        const RingElem& a, unsigned np, unsigned kp,
                        const RingElem& ap);
XElem xrel_rhs_instance(const RingPtr& ring, unsigned n, unsigned k,
                        const RingElem& a, unsigned np, unsigned kp,
                        const RingElem& ap);

// Commutator of linear combinations computed through the exchange relation:
// [A,B] = rhs - (i >= 1 part of lhs). Requires both arguments linear.
XElem x_bracket(const XElem& a, const XElem& b);

// eta = K/2 + p0 + psi/2 (rational scalars required).
RingElem eta_class(const RingPtr& ring);

struct XTriple {
    XElem e, f, h;
};
XTriple x_sl2_triple(const RingPtr& ring);

// Full sl2 verification: the lowering/raising brackets against arbitrary
// symbols, the sl2 axioms, and the degree-zero normalization.
std::optional<std::string> sl2_verify(unsigned genus, unsigned max_index = 4);

// X_{n,k}(a) = sum_i (-1)^i i! C(n,i) C(k,i) Xt_{n-i,k-i}(a eta^i).
XElem x_basis_elem(const RingPtr& ring, unsigned n, unsigned k, const RingElem& a);

// Ladder relations for the X basis, the ad-power identities producing it,
// and the consistency of the order-two involution X_{n,k} -> (-1)^k X_{k,n}
// with them.
std::optional<std::string> fourier_involution_check(unsigned genus,
                                                    unsigned max_nk);

// Coefficient extraction: substituting the polynomial expansion of the T
// operators into their commutation relation and reading off the coefficient
// of m^n m'^{n'} reproduces the exchange relation instance verbatim.
std::optional<std::string> x_rel_equiv_check(const RingPtr& ring, unsigned k,
                                             unsigned kp, const RingElem& a,
                                             const RingElem& ap, unsigned n_max);

}  // namespace opcalc
