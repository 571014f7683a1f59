#include "opcalc/env.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "opcalc/combinat.hpp"

namespace opcalc {

bool EnvElem::operator==(const EnvElem& o) const {
    if (is_zero() && o.is_zero()) return true;
    OPC_REQUIRE(!ring_ || !o.ring_ || ring_ == o.ring_,
                "comparing words over different rings");
    return terms_ == o.terms_;
}

EnvElem EnvElem::operator+(const EnvElem& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    OPC_REQUIRE(ring_ == o.ring_, "ring mismatch in +");
    EnvElem r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

EnvElem EnvElem::operator-(const EnvElem& o) const { return *this + (-o); }

EnvElem EnvElem::operator-() const {
    EnvElem r(ring_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

EnvElem EnvElem::operator*(const Rat& c) const {
    EnvElem r(ring_);
    if (c == 0) return r;
    for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
    return r;
}

EnvElem EnvElem::operator*(const EnvElem& o) const {
    OPC_REQUIRE(is_zero() || o.is_zero() || ring_ == o.ring_, "ring mismatch in *");
    EnvElem r(ring_ ? ring_ : o.ring_);
    for (const auto& [aw, ac] : terms_)
        for (const auto& [bw, bc] : o.terms_) {
            Word w = aw;
            w.insert(w.end(), bw.begin(), bw.end());
            r.add(std::move(w), ac * bc);
        }
    return r;
}

void EnvElem::add(Word w, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(std::move(w), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

EnvElem env_from_lie(const LieElem& x) {
    EnvElem r(x.ring());
    for (const auto& [key, c] : x.terms()) r.add({Letter::gen(key)}, c);
    return r;
}

EnvElem env_tower(const RingPtr& ring, Letter::Kind kind, unsigned n, unsigned d) {
    OPC_REQUIRE(n >= 1, "tower needs n >= 1");
    EnvElem r(ring);
    if (d == 0)
        r.add({}, 1);
    else
        r.add({kind == Letter::row_tower ? Letter::row(n, d) : Letter::col(n, d)}, 1);
    return r;
}

namespace {

struct Engine {
    const RingSpec& ring;
    RingPtr ring_ptr;
    EnvMode mode;
    RedexStrategy strategy;

    bool unit_arg(const Mono& m) const {
        for (auto e : m)
            if (e) return false;
        return true;
    }

    // Letter-level canonicalization: plain P_{n,0}(1) / P_{0,n}(1) letters
    // become one-step towers in the modes that carry towers.
    void canonicalize(Word& w) const {
        for (auto& l : w) {
            if (l.kind != Letter::pgen) continue;
            if (mode == EnvMode::plain) continue;
            if ((mode == EnvMode::u1 || mode == EnvMode::combined) && l.p.k == 0 &&
                l.p.m >= 1 && unit_arg(l.p.arg))
                l = Letter::row(l.p.m, 1);
            else if ((mode == EnvMode::u2 || mode == EnvMode::combined) &&
                     l.p.m == 0 && l.p.k >= 1 && unit_arg(l.p.arg))
                l = Letter::col(l.p.k, 1);
        }
        std::erase_if(w, [](const Letter& l) {
            return l.kind != Letter::pgen && l.d == 0;
        });
        for (const auto& l : w) {
            if (l.kind == Letter::row_tower)
                OPC_REQUIRE(mode == EnvMode::u1 || mode == EnvMode::combined,
                            "row tower not allowed in this mode");
            if (l.kind == Letter::col_tower)
                OPC_REQUIRE(mode == EnvMode::u2 || mode == EnvMode::combined,
                            "column tower not allowed in this mode");
        }
    }

    long k_weight(const Word& w) const {
        long s = 0;
        for (const auto& l : w) {
            if (l.kind == Letter::pgen) s += l.p.k;
            if (l.kind == Letter::col_tower) s += long(l.n) * l.d;
        }
        return s;
    }

    // Rank used for the layout order (towers' d deliberately excluded).
    static std::tuple<int, unsigned, unsigned, unsigned, Mono> rank(const Letter& l) {
        if (l.kind == Letter::pgen) return {1, l.p.m, l.p.k, 0, l.p.arg};
        return {l.kind == Letter::row_tower ? 0 : 2, l.n, 0, 0, {}};
    }

    long inversions(const Word& w) const {
        long s = 0;
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t j = i + 1; j < w.size(); ++j)
                if (rank(w[i]) > rank(w[j])) ++s;
        return s;
    }

    std::tuple<long, size_t, long> measure(const Word& w) const {
        return {k_weight(w), w.size(), inversions(w)};
    }

    bool is_redex(const Letter& a, const Letter& b) const {
        if (a.kind == Letter::row_tower && b.kind == Letter::row_tower)
            return a.n >= b.n;  // merge or sort
        if (a.kind == Letter::col_tower && b.kind == Letter::col_tower)
            return a.n >= b.n;
        if (a.kind == Letter::pgen && b.kind == Letter::row_tower) return true;
        if (a.kind == Letter::col_tower && b.kind == Letter::pgen) return true;
        if (a.kind == Letter::col_tower && b.kind == Letter::row_tower) return true;
        if (a.kind == Letter::pgen && b.kind == Letter::pgen) {
            if (b.p < a.p) return true;
            if (a.p == b.p && ring.odd_parity(a.p.arg)) return true;
        }
        return false;
    }

    // Expand the redex at position i of w into the replacement terms.
    void expand(const Word& w, size_t i, const Rat& coeff,
                std::vector<std::pair<Word, Rat>>& out) const {
        const Letter &a = w[i], &b = w[i + 1];
        auto emit = [&](std::vector<Letter> mid, const Rat& c) {
            if (c == 0) return;
            Word nw(w.begin(), w.begin() + i);
            nw.insert(nw.end(), mid.begin(), mid.end());
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            canonicalize(nw);
            out.emplace_back(std::move(nw), coeff * c);
        };

        if (a.kind != Letter::pgen && b.kind != Letter::pgen) {
            if (a.kind == b.kind && a.n == b.n) {
                // tower merge
                emit({a.kind == Letter::row_tower ? Letter::row(a.n, a.d + b.d)
                                                  : Letter::col(a.n, a.d + b.d)},
                     Rat(combinat::binomial(a.d + b.d, a.d)));
                return;
            }
            if (a.kind == Letter::col_tower && b.kind == Letter::row_tower)
                OPC_REQUIRE(a.n == 1 && b.n == 1,
                            "mixed row/column towers beyond n=1 are not part of "
                            "the combined system");
            emit({b, a}, 1);  // distinct towers commute
            return;
        }

        if (a.kind == Letter::pgen && b.kind == Letter::row_tower) {
            // P_{m,k}(x) R_n^{[d]} = sum_{j<=i} (-1)^{i-j} (i!/j!) C(k,i)
            //                        A_j(i,n) R_n^{[d-j]} P_{m+nj-i,k-i}(x a0^{i-j})
            const unsigned m = a.p.m, k = a.p.k, n = b.n, d = b.d;
            RingElem base = ring.from_raw({{a.p.arg, 1}});
            for (unsigned j = 0; j <= d; ++j) {
                unsigned ilo = j, ihi = j == 0 ? 0 : std::min(k, n * j);
                for (unsigned i = ilo; i <= ihi && i <= k; ++i) {
                    Int c = combinat::binomial(k, i) * combinat::A_coeff(j, i, n);
                    if (c == 0) continue;
                    c *= combinat::falling_ratio(i, j);
                    if ((i - j) % 2) c = -c;
                    RingElem arg = base * ring.a0_elem().pow(i - j);
                    for (const auto& [mono, mc] : arg.terms()) {
                        std::vector<Letter> mid;
                        if (d - j > 0) mid.push_back(Letter::row(n, d - j));
                        mid.push_back(Letter::gen({m + n * j - i, k - i, mono}));
                        emit(std::move(mid), Rat(c) * mc);
                    }
                }
            }
            return;
        }

        if (a.kind == Letter::col_tower && b.kind == Letter::pgen) {
            // C_n^{[d]} P_{m,k}(x) = sum_{j<=i} (-1)^{i-j} (i!/j!) C(m,i)
            //                        A_j(i,n) P_{m-i,k+nj-i}(x a0^{i-j}) C_n^{[d-j]}
            const unsigned m = b.p.m, k = b.p.k, n = a.n, d = a.d;
            RingElem base = ring.from_raw({{b.p.arg, 1}});
            for (unsigned j = 0; j <= d; ++j) {
                unsigned ilo = j, ihi = j == 0 ? 0 : std::min(m, n * j);
                for (unsigned i = ilo; i <= ihi && i <= m; ++i) {
                    Int c = combinat::binomial(m, i) * combinat::A_coeff(j, i, n);
                    if (c == 0) continue;
                    c *= combinat::falling_ratio(i, j);
                    if ((i - j) % 2) c = -c;
                    RingElem arg = base * ring.a0_elem().pow(i - j);
                    for (const auto& [mono, mc] : arg.terms()) {
                        std::vector<Letter> mid;
                        mid.push_back(Letter::gen({m - i, k + n * j - i, mono}));
                        if (d - j > 0) mid.push_back(Letter::col(n, d - j));
                        emit(std::move(mid), Rat(c) * mc);
                    }
                }
            }
            return;
        }

        // P segment: swap with super sign plus bracket correction.
        OPC_REQUIRE(a.kind == Letter::pgen && b.kind == Letter::pgen,
                    "unexpected redex");
        bool odd = ring.odd_parity(a.p.arg) && ring.odd_parity(b.p.arg);
        if (a.p == b.p) {
            // equal odd letters: x^2 = (1/2)[x,x] = 0
            return;
        }
        emit({b, a}, odd ? -1 : 1);
        LieElem br = bracket(p_gen(ring_ptr, a.p.m, a.p.k, ring.from_raw({{a.p.arg, 1}})),
                             p_gen(ring_ptr, b.p.m, b.p.k, ring.from_raw({{b.p.arg, 1}})));
        for (const auto& [key, c] : br.terms()) emit({Letter::gen(key)}, c);
    }

    EnvElem run(const EnvElem& x) const {
        EnvElem result(ring_ptr);
        std::deque<std::pair<Word, Rat>> pending;
        for (const auto& [w, c] : x.terms()) {
            Word cw = w;
            canonicalize(cw);
            pending.emplace_back(std::move(cw), c);
        }
        while (!pending.empty()) {
            auto [w, c] = std::move(pending.front());
            pending.pop_front();
            size_t redex = w.size();
            if (strategy == RedexStrategy::leftmost) {
                for (size_t i = 0; i + 1 < w.size(); ++i)
                    if (is_redex(w[i], w[i + 1])) {
                        redex = i;
                        break;
                    }
            } else {
                for (size_t i = w.size(); i-- > 1;)
                    if (is_redex(w[i - 1], w[i])) {
                        redex = i - 1;
                        break;
                    }
            }
            if (redex == w.size()) {
                result.add(std::move(w), c);
                continue;
            }
            std::vector<std::pair<Word, Rat>> expanded;
            expand(w, redex, c, expanded);
            auto before = measure(w);
            for (auto& [nw, nc] : expanded) {
                OPC_REQUIRE(measure(nw) < before,
                            "straightening step failed to decrease its measure");
                pending.emplace_back(std::move(nw), nc);
            }
        }
        return result;
    }
};

}  // namespace

EnvElem normal_form(const EnvElem& x, EnvMode mode, RedexStrategy strategy) {
    if (!x.ring()) return x;
    Engine eng{*x.ring(), x.ring(), mode, strategy};
    return eng.run(x);
}

EnvElem expand_towers(const EnvElem& x) {
    EnvElem r(x.ring());
    for (const auto& [w, c] : x.terms()) {
        std::vector<std::pair<Word, Rat>> acc{{Word{}, c}};
        for (const auto& l : w) {
            if (l.kind == Letter::pgen) {
                for (auto& [aw, ac] : acc) aw.push_back(l);
            } else {
                PKey key = l.kind == Letter::row_tower
                               ? PKey{l.n, 0, x.ring()->unit()}
                               : PKey{0, l.n, x.ring()->unit()};
                Rat inv = Rat(1) / Rat(factorial(l.d));
                for (auto& [aw, ac] : acc) {
                    for (unsigned i = 0; i < l.d; ++i) aw.push_back(Letter::gen(key));
                    ac *= inv;
                }
            }
        }
        for (auto& [aw, ac] : acc) r.add(std::move(aw), ac);
    }
    return r;
}

CentralizedEnv env_centralize(const EnvElem& x) {
    CentralizedEnv out;
    if (!x.ring()) return out;
    const RingSpec& ring = *x.ring();
    for (const auto& [w, c] : x.terms()) {
        Word rest;
        RingElem scalar = ring.unit_elem();
        for (const auto& l : w) {
            if (l.kind == Letter::pgen && l.p.m == 0 && l.p.k == 0)
                scalar = scalar * ring.pi_star(ring.from_raw({{l.p.arg, 1}}));
            else
                rest.push_back(l);
        }
        if (scalar.is_zero()) continue;
        RawPoly& slot = out[rest];
        for (const auto& [m, sc] : scalar.terms()) {
            auto it = slot.find(m);
            if (it == slot.end())
                slot.emplace(m, sc * c);
            else if ((it->second += sc * c) == 0)
                slot.erase(it);
        }
        if (slot.empty()) out.erase(rest);
    }
    return out;
}

bool centralized_equal(const CentralizedEnv& a, const CentralizedEnv& b) {
    return a == b;
}

LieElem ad_power(const LieElem& x, const LieElem& y, unsigned i) {
    LieElem r = y;
    for (unsigned s = 0; s < i; ++s) r = bracket(x, r);
    return r;
}

namespace {
EnvElem lie_power(const LieElem& x, unsigned d) {
    EnvElem e = env_from_lie(x);
    EnvElem r(x.ring());
    r.add({}, 1);
    for (unsigned i = 0; i < d; ++i) r = r * e;
    return r;
}

std::string diff_witness(const EnvElem& lhs, const EnvElem& rhs) {
    return "lhs = " + lhs.to_string() + " ; rhs = " + rhs.to_string();
}
}  // namespace

EnvCheck pbw_identity_check(const LieElem& x, const LieElem& y, unsigned d) {
    OPC_REQUIRE(d >= 1, "pbw_identity_check: d >= 1");
    EnvElem lhs = normal_form(lie_power(x, d) * env_from_lie(y), EnvMode::plain);
    EnvElem rhs(x.ring());
    for (unsigned i = 0; i <= d; ++i)
        rhs = rhs + env_from_lie(ad_power(x, y, i)) * lie_power(x, d - i) *
                        Rat(combinat::binomial(d, i));
    rhs = normal_form(rhs, EnvMode::plain);
    if (lhs == rhs) {
        // mirrored identity: y x^d = sum_i C(d,i) x^{d-i} (-ad x)^i (y)
        EnvElem lhs2 = normal_form(env_from_lie(y) * lie_power(x, d), EnvMode::plain);
        EnvElem rhs2(x.ring());
        for (unsigned i = 0; i <= d; ++i) {
            Rat c = combinat::binomial(d, i);
            if (i % 2) c = -c;
            rhs2 = rhs2 + lie_power(x, d - i) * env_from_lie(ad_power(x, y, i)) * c;
        }
        rhs2 = normal_form(rhs2, EnvMode::plain);
        if (lhs2 == rhs2) return {};
        return {false, diff_witness(lhs2, rhs2)};
    }
    return {false, diff_witness(lhs, rhs)};
}

namespace {

// Straighten  P_{m,k}(a) P_{n,0}(1)^d  (resp. the column mirror) three ways:
// the divided engine scaled by d!, the closed double-sum expansion, and plain
// bracket straightening; all three must agree in the tower-free picture.
EnvCheck divided_commute_impl(const RingPtr& ring, unsigned m, unsigned k,
                              const RingElem& a, unsigned n, unsigned d, bool row) {
    LieElem p = p_gen(ring, m, k, a);
    LieElem tower_gen = p_gen(ring, row ? n : 0, row ? 0 : n, ring->unit_elem());
    EnvElem word = row ? env_from_lie(p) * lie_power(tower_gen, d)
                       : lie_power(tower_gen, d) * env_from_lie(p);

    EnvElem plain = normal_form(word, EnvMode::plain);

    EnvElem divided = normal_form(
        row ? env_from_lie(p) *
                  env_tower(ring, Letter::row_tower, n, d) * Rat(factorial(d))
            : env_tower(ring, Letter::col_tower, n, d) * Rat(factorial(d)) *
                  env_from_lie(p),
        row ? EnvMode::u1 : EnvMode::u2);
    divided = normal_form(expand_towers(divided), EnvMode::plain);
    if (!(plain == divided)) return {false, diff_witness(plain, divided)};

    // closed expansion with coefficients i! d! / (j! (d-j)!)
    EnvElem closed(ring);
    for (unsigned j = 0; j <= d; ++j) {
        unsigned cap = row ? k : m;
        for (unsigned i = j; i <= std::max(j, n * j) && i <= cap; ++i) {
            if (j == 0 && i > 0) break;
            Int c = combinat::binomial(cap, i) * combinat::A_coeff(j, i, n);
            if (c == 0) continue;
            c *= factorial(i) * exact_div(factorial(d), factorial(j) * factorial(d - j),
                                          "divided_commute");
            if ((i - j) % 2) c = -c;
            RingElem arg = a * ring->a0_elem().pow(i - j);
            LieElem inner = row ? p_gen(ring, m + n * j - i, k - i, arg)
                                : p_gen(ring, m - i, k + n * j - i, arg);
            EnvElem term = row ? lie_power(tower_gen, d - j) * env_from_lie(inner)
                               : env_from_lie(inner) * lie_power(tower_gen, d - j);
            closed = closed + term * Rat(c);
        }
    }
    closed = normal_form(closed, EnvMode::plain);
    if (!(plain == closed)) return {false, diff_witness(plain, closed)};
    return {};
}

}  // namespace

EnvCheck divided_commute_check(const RingPtr& ring, unsigned m, unsigned k,
                               const RingElem& a, unsigned n, unsigned d) {
    return divided_commute_impl(ring, m, k, a, n, d, true);
}

EnvCheck divided_commute_check_col(const RingPtr& ring, unsigned m, unsigned k,
                                   const RingElem& a, unsigned n, unsigned d) {
    return divided_commute_impl(ring, m, k, a, n, d, false);
}

EnvCheck trivial_deformation_collapse_check(const RingPtr& ring, unsigned m,
                                            unsigned k, const RingElem& a,
                                            unsigned n, unsigned d) {
    OPC_REQUIRE(ring->a0_elem().is_zero(),
                "collapse check needs a ring with a0 = 0");
    EnvElem lhs = normal_form(
        env_from_lie(p_gen(ring, m, k, a)) * env_tower(ring, Letter::row_tower, n, d),
        EnvMode::u1);
    EnvElem rhs(ring);
    for (unsigned i = 0; i <= std::min(k, d); ++i)
        rhs = rhs + env_tower(ring, Letter::row_tower, n, d - i) *
                        env_from_lie(p_gen(ring, m + i * (n - 1), k - i, a)) *
                        Rat(combinat::binomial(k, i) * pow_int(Int(n), i));
    rhs = normal_form(rhs, EnvMode::u1);
    if (lhs == rhs) {
        EnvElem lhs2 = normal_form(
            env_tower(ring, Letter::col_tower, n, d) * env_from_lie(p_gen(ring, m, k, a)),
            EnvMode::u2);
        EnvElem rhs2(ring);
        for (unsigned i = 0; i <= std::min(m, d); ++i)
            rhs2 = rhs2 + env_from_lie(p_gen(ring, m - i, k + i * (n - 1), a)) *
                              env_tower(ring, Letter::col_tower, n, d - i) *
                              Rat(combinat::binomial(m, i) * pow_int(Int(n), i));
        rhs2 = normal_form(rhs2, EnvMode::u2);
        if (lhs2 == rhs2) return {};
        return {false, diff_witness(lhs2, rhs2)};
    }
    return {false, diff_witness(lhs, rhs)};
}

EnvElem HeisenbergImage::u_div(unsigned d) const {
    return env_tower(ring, Letter::row_tower, 1, d);
}

EnvElem HeisenbergImage::dt_div(unsigned d) const {
    return env_tower(ring, Letter::col_tower, 1, d);
}

HeisenbergImage heisenberg_embed(const RingPtr& ring) {
    HeisenbergImage img;
    img.ring = ring;
    RingElem t_class = ring->point_elem() + ring->psi_elem();
    img.t = env_from_lie(p_gen(ring, 1, 0, t_class));
    img.du = env_from_lie(p_gen(ring, 0, 1, ring->point_elem()));
    return img;
}

std::string EnvElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::ostringstream ws;
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) ws << "*";
            const Letter& l = w[i];
            if (l.kind == Letter::pgen)
                ws << "P(" << l.p.m << "," << l.p.k << ";"
                   << ring_->mono_name(l.p.arg) << ")";
            else if (l.kind == Letter::row_tower)
                ws << "Pd(" << l.n << ",0;" << l.d << ")";
            else
                ws << "Pd(0," << l.n << ";" << l.d << ")";
        }
        std::string word = w.empty() ? "1" : ws.str();
        if (a != 1) {
            os << a;
            if (word != "1") os << "*" << word;
        } else {
            os << word;
        }
    }
    return os.str();
}

}  // namespace opcalc
