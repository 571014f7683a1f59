#pragma once

#include <variant>
#include <vector>

#include "opcalc/liealg.hpp"

namespace opcalc {

// Letters of the divided-power enveloping algebras: P generators plus row
// towers P_{n,0}(1)^{[d]} and column towers P_{0,n}(1)^{[d]}.
struct Letter {
    enum Kind : std::uint8_t { row_tower = 0, pgen = 1, col_tower = 2 };
    Kind kind = pgen;
    unsigned n = 0, d = 0;  // towers
    PKey p;                 // pgen

    static Letter row(unsigned n, unsigned d) { return {row_tower, n, d, {}}; }
    static Letter col(unsigned n, unsigned d) { return {col_tower, n, d, {}}; }
    static Letter gen(PKey k) { return {pgen, 0, 0, std::move(k)}; }

    auto fields() const { return std::tie(kind, n, d, p); }
    bool operator==(const Letter& o) const { return fields() == o.fields(); }
    bool operator<(const Letter& o) const { return fields() < o.fields(); }
};

using Word = std::vector<Letter>;

// Normal-form layout and rewrite orientation.
enum class EnvMode {
    plain,     // no towers: pure bracket straightening inside U(D)
    u1,        // row towers leftmost
    u2,        // column towers rightmost
    combined,  // both; rows and columns commute for n = 1 only
};

class EnvElem {
  public:
    EnvElem() = default;
    explicit EnvElem(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<Word, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const EnvElem& o) const;

    EnvElem operator+(const EnvElem& o) const;
    EnvElem operator-(const EnvElem& o) const;
    EnvElem operator-() const;
    EnvElem operator*(const Rat& c) const;
    EnvElem operator*(const EnvElem& o) const;  // concatenation, no rewriting

    void add(Word w, const Rat& c);
    std::string to_string() const;

  private:
    RingPtr ring_;
    std::map<Word, Rat> terms_;
};

EnvElem env_from_lie(const LieElem& x);
EnvElem env_tower(const RingPtr& ring, Letter::Kind kind, unsigned n, unsigned d);

// Straightening to normal form. Applies, until no redex remains:
//   (ii)  merging of equal-n towers with binomial coefficients,
//   (iii) moving P generators right past row towers (resp. column towers
//         right past P generators),
//   bracket straightening of the P segment by a fixed total order,
//   commutation of distinct towers.
// Each step strictly decreases (k-weight, length, inversions); a
// non-decreasing step aborts.
enum class RedexStrategy { leftmost, rightmost };
EnvElem normal_form(const EnvElem& x, EnvMode mode,
                    RedexStrategy strategy = RedexStrategy::leftmost);

// Replace towers by ordinary powers: P_{n,0}(1)^{[d]} -> (1/d!) P_{n,0}(1)^d.
EnvElem expand_towers(const EnvElem& x);

// Central letters P_{0,0}(a) resolved to pi_*(a); coefficients become
// base-ring valued.
using CentralizedEnv = std::map<Word, RawPoly>;
CentralizedEnv env_centralize(const EnvElem& x);
bool centralized_equal(const CentralizedEnv& a, const CentralizedEnv& b);

// ad(x)^i(y) inside the Lie algebra.
LieElem ad_power(const LieElem& x, const LieElem& y, unsigned i);

struct EnvCheck {
    bool pass = true;
    std::string witness;
};

// x^d y = sum_i C(d,i) ad(x)^i(y) x^{d-i} and the mirrored identity, checked
// by straightening in plain mode.
EnvCheck pbw_identity_check(const LieElem& x, const LieElem& y, unsigned d);

// d! times the divided relation (iii) against the closed expansion of
// P_{m,k}(a) P_{n,0}(1)^d, and against brute-force bracket straightening.
EnvCheck divided_commute_check(const RingPtr& ring, unsigned m, unsigned k,
                               const RingElem& a, unsigned n, unsigned d);
// Column-side mirror.
EnvCheck divided_commute_check_col(const RingPtr& ring, unsigned m, unsigned k,
                                   const RingElem& a, unsigned n, unsigned d);

// Over a ring with a0 = 0 the straightening collapses to
//   P_{m,k}(a) P_{n,0}(1)^{[d]} = sum_i C(k,i) n^i P^{[d-i]} P_{m+i(n-1),k-i}(a).
EnvCheck trivial_deformation_collapse_check(const RingPtr& ring, unsigned m,
                                            unsigned k, const RingElem& a,
                                            unsigned n, unsigned d);

// Images of t, u^{[d]}, dt^{[d]}, du generating the divided Heisenberg action.
struct HeisenbergImage {
    EnvElem t, du;
    EnvElem u_div(unsigned d) const;
    EnvElem dt_div(unsigned d) const;
    RingPtr ring;
};
HeisenbergImage heisenberg_embed(const RingPtr& ring);

}  // namespace opcalc
