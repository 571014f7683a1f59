#pragma once

#include <compare>
#include <map>

#include "opcalc/ring.hpp"

namespace opcalc {

// Basis operator P_{m,k}(arg) with arg a reduced ring monomial; elements are
// rational combinations of these (base scalars such as psi live inside the
// monomial, which makes the representation canonical).
struct PKey {
    unsigned m = 0, k = 0;
    Mono arg;
    auto operator<=>(const PKey&) const = default;
};

struct BiDegree {
    long codim = 0, weight = 0;
    bool operator==(const BiDegree&) const = default;
    BiDegree operator+(const BiDegree& o) const {
        return {codim + o.codim, weight + o.weight};
    }
};

class LieElem {
  public:
    LieElem() = default;
    explicit LieElem(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<PKey, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const LieElem& o) const;

    LieElem operator+(const LieElem& o) const;
    LieElem operator-(const LieElem& o) const;
    LieElem operator-() const;
    LieElem operator*(const Rat& c) const;

    void add(const PKey& key, const Rat& c);
    std::string to_string() const;

  private:
    RingPtr ring_;
    std::map<PKey, Rat> terms_;
};

inline LieElem operator*(const Rat& c, const LieElem& x) { return x * c; }

// P_{m,k}(a), extended linearly in a.
LieElem p_gen(const RingPtr& ring, unsigned m, unsigned k, const RingElem& a);

bool pkey_odd(const RingSpec& ring, const PKey& key);

// codim shift deg(a) + w(m-1) with w the point-class degree, weight shift m-k.
BiDegree bidegree(const RingSpec& ring, const PKey& key);

// Supercommutator
//   [P_{m,k}(a), P_{m',k'}(a')] = sum_{i>=1} (-1)^{i-1} i!
//       (C(k,i)C(m',i) - C(m,i)C(k',i)) P_{m+m'-i,k+k'-i}(a a' a0^{i-1}).
LieElem bracket(const LieElem& x, const LieElem& y);

// Graded Jacobi defect [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]] for
// parity-homogeneous arguments; zero iff the identity holds.
LieElem jacobi_defect(const LieElem& x, bool x_odd, const LieElem& y, bool y_odd,
                      const LieElem& z);

// Replace each central P_{0,0}(a) by the scalar pi_*(a).
std::pair<LieElem, RingElem> centralize(const LieElem& x);

// Theta characteristic: chi with 2 chi = a0. Throws if a0 is not exactly
// 2-divisible in integer mode.
RingElem theta_characteristic(const RingPtr& ring);

// L_{m,k}(a) = P_{m,k}(a) - m k P_{m-1,k-1}(chi a), expressed in the P basis.
LieElem L_gen(const RingPtr& ring, unsigned m, unsigned k, const RingElem& a,
              const RingElem& chi);

// Triangular change of basis between the P and L pictures.
std::map<PKey, Rat> to_L_basis(const LieElem& x, const RingElem& chi);
LieElem from_L_basis(const RingPtr& ring, const std::map<PKey, Rat>& lcoords,
                     const RingElem& chi);

}  // namespace opcalc
