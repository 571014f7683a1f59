#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/numeric.hpp"

namespace opcalc {

// A monomial is the exponent vector over the ring's generators, in generator
// order. Odd generators carry exponent <= 1 (their square is zero).
using Mono = std::vector<std::uint8_t>;
// Polynomial without a ring handle; used inside RingSpec tables.
using RawPoly = std::map<Mono, Rat>;

struct GeneratorSpec {
    std::string name;
    bool odd = false;
    unsigned degree = 1;
    bool base = false;  // base-ring scalar (pulled back from S), e.g. psi
};

class RingElem;
struct RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;

// A presented graded supercommutative ring with a distinguished even element
// a0, a base-scalar subring, a pushforward pi_* to the base and a restriction
// p0^* along the marked point.
struct RingSpec : std::enable_shared_from_this<RingSpec> {
    std::string name;
    std::vector<GeneratorSpec> gens;
    std::map<Mono, RawPoly> rules;  // lhs monomial -> fully reduced rhs
    RawPoly a0;
    RawPoly point;                    // class of the marked point ([p0] / pt)
    std::map<Mono, RawPoly> pi_star_table;  // reduced fiber monomial -> base
    bool pi_star_zero_fallback = false;     // missing table entries push to 0
    std::vector<RawPoly> restriction;       // p0^* per generator, base-valued
    bool rational = false;
    bool point_collapse = false;  // tautological model: x_i(point) = t^i
    unsigned genus = 0;
    unsigned point_degree = 1;  // degree of the point class (1 Chow, 2 cohomology)

    // --- monomial helpers ---
    Mono unit() const { return Mono(gens.size(), 0); }
    unsigned degree(const Mono& m) const;
    bool odd_parity(const Mono& m) const;
    bool is_base(const Mono& m) const;
    Mono base_part(const Mono& m) const;
    Mono fiber_part(const Mono& m) const;
    std::string mono_name(const Mono& m) const;  // "K*p0^2", "1" for unit

    // Supercommutative product of monomials before reduction; returns the
    // Koszul sign, or nullopt when an odd generator squares to zero.
    std::optional<std::pair<Mono, int>> mono_mul(const Mono& a, const Mono& b) const;

    // --- reduction ---
    RawPoly reduce_mono(const Mono& m, const Rat& coeff) const;
    RawPoly reduce(const RawPoly& p) const;
    // Every maximal single-step reduction of m (one rule, applied once),
    // for the local-confluence property test.
    std::vector<RawPoly> single_step_reductions(const Mono& m) const;

    // --- element constructors ---
    RingElem zero() const;
    RingElem unit_elem() const;
    RingElem from_raw(RawPoly p) const;
    RingElem gen_elem(const std::string& name) const;
    RingElem a0_elem() const;
    RingElem point_elem() const;
    RingElem psi_elem() const;  // zero when the ring has no base generator

    // --- structure maps ---
    RingElem pi_star(const RingElem& x) const;   // pushforward to the base
    RingElem p0_star(const RingElem& x) const;   // restriction along p0
    RingElem pairing(const RingElem& x, const RingElem& y) const;

    std::string fingerprint() const;

    bool odd_parity_raw(const RawPoly& p) const;

    // Termination of rule rewriting: checked for every rule at load time.
    void validate() const;
};

class RingElem {
  public:
    RingElem() = default;
    RingElem(RingPtr ring, RawPoly terms);

    const RingPtr& ring() const { return ring_; }
    const RawPoly& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const RingElem& o) const;
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator-() const;
    RingElem operator*(const RingElem& o) const;
    RingElem operator*(const Rat& c) const;
    RingElem pow(unsigned e) const;

    // Homogeneity queries; throw on non-homogeneous input.
    bool homogeneous() const;
    unsigned degree() const;
    bool odd_parity() const;

    // True if supported on base monomials only.
    bool base_only() const;
    // Rational value of a base element that is a pure scalar (throws else).
    Rat scalar_value() const;

    std::string to_string() const;

  private:
    RingPtr ring_;
    RawPoly terms_;
    friend struct RingSpec;
};

inline RingElem operator*(const Rat& c, const RingElem& x) { return x * c; }

// H^*(C) of a genus-g curve: odd alpha_i, beta_i of degree 1 with
// alpha_i beta_i = pt, an even point class pt of degree 2, a0 = (2g-2) pt.
RingPtr make_curve_cohomology(unsigned genus);

struct ChowOptions {
    unsigned psi_truncation = 0;  // d > 0 imposes psi^d = 0
    bool rational = false;
    bool canonical_is_point_multiple = false;  // impose K = (2g-2) p0
};

// The symbolic model of CH^*(C) for a family of genus-g curves: even K, p0,
// psi of degree 1 with p0^2 = -psi p0 and K p0 = psi p0, a0 = K. This is a
// declared presentation, not the Chow ring of any particular curve; identities
// verified over it are consistency checks of the operator formulas.
RingPtr make_curve_chow_symbolic(unsigned genus, ChowOptions opts = {});

// Declarative ring-spec text format (see README): sections [generators],
// [rules], [a0], [point], [pushforward], [restriction], [options].
RingPtr load_ring_spec(const std::string& text);

}  // namespace opcalc
