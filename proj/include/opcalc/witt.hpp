#pragma once

#include <map>
#include <string>
#include <vector>

#include "opcalc/numeric.hpp"

namespace opcalc {

// Free commutative ring on x_1..x_r truncated above total degree g, with the
// adjoined variable t: the model for degree-graded 0-cycles on a Jacobian.
// Basis keys are (exponents of the x_p, exponent of t).
class ZeroCycleModel {
  public:
    ZeroCycleModel(unsigned generators, unsigned truncation)
        : r_(generators), g_(truncation) {}

    unsigned generators() const { return r_; }
    unsigned truncation() const { return g_; }

    struct Key {
        std::vector<unsigned> xexp;
        unsigned texp = 0;
        auto operator<=>(const Key&) const = default;
    };
    using Elem = std::map<Key, Rat>;

    Elem zero() const { return {}; }
    Elem one() const;
    Elem x(unsigned p) const;  // 1-based generator index
    Elem t() const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const Rat& c) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, unsigned e) const;

    // The derivation with delta_m(x_p) = x_p^m, extended by Leibniz and
    // commuting with t.
    Elem delta(unsigned m, const Elem& a) const;

    // P_{m,1} = sum_{j<m} C(m,j) t^j delta_{m-j} + t^m d/dt.
    Elem p_m1(unsigned m, const Elem& a) const;

    std::string to_string(const Elem& a) const;

  private:
    unsigned r_, g_;
    void add_term(Elem& e, Key k, const Rat& c) const;
};

// Formal Z-combinations of points of Z^r under the convolution (Pontryagin)
// product; [m]_* acts by dilation v -> m v.
class GroupAlgebra {
  public:
    explicit GroupAlgebra(unsigned rank) : rank_(rank) {}

    using Key = std::vector<long>;
    using Elem = std::map<Key, Rat>;

    Elem point(const Key& v) const;
    Elem zero_point() const { return point(Key(rank_, 0)); }
    Elem add(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const Rat& c) const;
    Elem mul(const Elem& a, const Elem& b) const;  // Pontryagin product
    Elem pow(const Elem& a, unsigned e) const;
    Elem pushforward(long m, const Elem& a) const;  // [m]_*

    // ([v]-[0])^{*m} = sum_{i=0}^{m-1} (-1)^i C(m,i) [m-i]_*([v]-[0])
    bool pontryagin_identity(unsigned m, const Key& v) const;

  private:
    unsigned rank_;
};

}  // namespace opcalc
