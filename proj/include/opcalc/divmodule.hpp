#pragma once

#include <map>
#include <string>
#include <vector>

#include "opcalc/numeric.hpp"

namespace opcalc {

// A finitely supported module over Z[t, u^[.], dt^[.], du] given by explicit
// action tables on a weighted basis.
struct DividedModule {
    using Vec = std::map<unsigned, Rat>;
    // column-sparse operator: image of each basis vector
    using Matrix = std::vector<Vec>;

    unsigned rank = 0;
    std::vector<long> weight;  // weight per basis vector
    Matrix t, du;
    std::map<unsigned, Matrix> u_div;   // d -> action of u^[d]
    std::map<unsigned, Matrix> dt_div;  // d -> action of dt^[d]

    Vec apply(const Matrix& op, const Vec& v) const;
    Vec apply_t_pow(unsigned i, const Vec& v) const;
    Vec apply_u_div(unsigned d, const Vec& v) const;
    Vec apply_dt_div(unsigned d, const Vec& v) const;
    Vec apply_du(const Vec& v) const;

    long max_weight() const;
};

// Gamma[t, u^[.]] over Z truncated above total weight W; raising operators
// send overflowing vectors to zero, which the extraction never exercises.
DividedModule truncated_fock_module(unsigned max_weight);

// Text serialization (see README for the format).
std::string module_to_text(const DividedModule& mod);
DividedModule module_from_text(const std::string& text);

struct Decomposition {
    bool ok = true;
    std::string witness;
    // lowest-weight part: vectors killed by du and all dt^[n], n > 0
    std::vector<DividedModule::Vec> m0_vectors;
    // per input basis vector: coefficients (t exp, u index) -> member of M0
    std::vector<std::map<std::pair<unsigned, unsigned>, DividedModule::Vec>> expansion;
};

// Constructive form of the lowest-weight decomposition M = M0[t, u^[.]]:
// extracts the coefficients through du- and dt-descent and re-verifies the
// reconstruction exactly. Fails loudly when the lowering operators are not
// locally nilpotent.
Decomposition decompose_module(const DividedModule& mod);

// t is injective from weights < w_max, du surjects onto weights < w_max.
bool t_injective(const DividedModule& mod);
bool du_surjective(const DividedModule& mod);

}  // namespace opcalc
