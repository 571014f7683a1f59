#include "opcalc/divmodule.hpp"

#include <algorithm>
#include <sstream>

#include "opcalc/combinat.hpp"

namespace opcalc {

namespace {
void vec_add(DividedModule::Vec& v, unsigned i, const Rat& c) {
    if (c == 0) return;
    auto it = v.find(i);
    if (it == v.end()) {
        v.emplace(i, c);
    } else {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

DividedModule::Vec vec_sub(const DividedModule::Vec& a, const DividedModule::Vec& b) {
    DividedModule::Vec r = a;
    for (const auto& [i, c] : b) vec_add(r, i, -c);
    return r;
}
}  // namespace

DividedModule::Vec DividedModule::apply(const Matrix& op, const Vec& v) const {
    Vec r;
    for (const auto& [j, c] : v) {
        OPC_REQUIRE(j < op.size(), "module operator table too small");
        for (const auto& [i, k] : op[j]) vec_add(r, i, c * k);
    }
    return r;
}

DividedModule::Vec DividedModule::apply_t_pow(unsigned i, const Vec& v) const {
    Vec r = v;
    for (unsigned s = 0; s < i; ++s) r = apply(t, r);
    return r;
}

DividedModule::Vec DividedModule::apply_u_div(unsigned d, const Vec& v) const {
    if (d == 0) return v;
    auto it = u_div.find(d);
    OPC_REQUIRE(it != u_div.end(),
                "module has no table for u^[" + std::to_string(d) + "]");
    return apply(it->second, v);
}

DividedModule::Vec DividedModule::apply_dt_div(unsigned d, const Vec& v) const {
    if (d == 0) return v;
    auto it = dt_div.find(d);
    OPC_REQUIRE(it != dt_div.end(),
                "module has no table for dt^[" + std::to_string(d) + "]");
    return apply(it->second, v);
}

DividedModule::Vec DividedModule::apply_du(const Vec& v) const { return apply(du, v); }

long DividedModule::max_weight() const {
    long w = 0;
    for (long x : weight) w = std::max(w, x);
    return w;
}

DividedModule truncated_fock_module(unsigned W) {
    DividedModule mod;
    std::map<std::pair<unsigned, unsigned>, unsigned> index;
    for (unsigned m = 0; m <= W; ++m)
        for (unsigned n = 0; m + n <= W; ++n) {
            index[{m, n}] = mod.rank++;
            mod.weight.push_back(long(m) + long(n));
        }
    auto matrix = [&](auto&& image) {
        DividedModule::Matrix op(mod.rank);
        for (const auto& [mn, j] : index) {
            auto img = image(mn.first, mn.second);  // optional<(m,n,coeff)>
            if (!img) continue;
            auto [im, in, c] = *img;
            if (im + in <= W && c != 0) op[j].emplace(index.at({im, in}), c);
        }
        return op;
    };
    using R = std::optional<std::tuple<unsigned, unsigned, Rat>>;
    mod.t = matrix([&](unsigned m, unsigned n) -> R {
        return std::tuple{m + 1, n, Rat(1)};
    });
    mod.du = matrix([&](unsigned m, unsigned n) -> R {
        if (n == 0) return std::nullopt;
        return std::tuple{m, n - 1, Rat(1)};
    });
    for (unsigned d = 1; d <= W; ++d) {
        mod.u_div[d] = matrix([&](unsigned m, unsigned n) -> R {
            return std::tuple{m, n + d, Rat(combinat::binomial(n + d, d))};
        });
        mod.dt_div[d] = matrix([&](unsigned m, unsigned n) -> R {
            if (m < d) return std::nullopt;
            return std::tuple{m - d, n, Rat(combinat::binomial(m, d))};
        });
    }
    return mod;
}

std::string module_to_text(const DividedModule& mod) {
    std::ostringstream os;
    os << "[module]\n" << "rank = " << mod.rank << "\nweights =";
    for (long w : mod.weight) os << " " << w;
    os << "\n";
    auto dump = [&](const std::string& name, const DividedModule::Matrix& op) {
        os << "[op " << name << "]\n";
        for (unsigned j = 0; j < op.size(); ++j)
            for (const auto& [i, c] : op[j]) os << j << " " << i << " " << c << "\n";
    };
    dump("t", mod.t);
    dump("du", mod.du);
    for (const auto& [d, op] : mod.u_div) dump("u " + std::to_string(d), op);
    for (const auto& [d, op] : mod.dt_div) dump("dt " + std::to_string(d), op);
    return os.str();
}

DividedModule module_from_text(const std::string& text) {
    DividedModule mod;
    std::istringstream is(text);
    std::string line;
    DividedModule::Matrix* cur = nullptr;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first);
        if (line[0] == '#') continue;
        if (line[0] == '[') {
            auto close = line.find(']');
            OPC_REQUIRE(close != std::string::npos, "module file: missing ']'");
            std::string head = line.substr(1, close - 1);
            if (head == "module") {
                cur = nullptr;
                continue;
            }
            std::istringstream hs(head);
            std::string tag, opname;
            hs >> tag >> opname;
            OPC_REQUIRE(tag == "op", "module file: unknown section " + head);
            unsigned d = 0;
            hs >> d;
            OPC_REQUIRE(mod.rank > 0, "module file: [module] must come first");
            DividedModule::Matrix** slot;
            if (opname == "t") {
                cur = &mod.t;
            } else if (opname == "du") {
                cur = &mod.du;
            } else if (opname == "u") {
                cur = &mod.u_div[d];
            } else if (opname == "dt") {
                cur = &mod.dt_div[d];
            } else {
                throw internal_error("module file: unknown operator " + opname);
            }
            (void)slot;
            cur->assign(mod.rank, {});
            continue;
        }
        if (!cur) {
            auto eq = line.find('=');
            OPC_REQUIRE(eq != std::string::npos,
                        "module file line " + std::to_string(lineno));
            std::string key = line.substr(0, eq);
            key.erase(key.find_last_not_of(" \t") + 1);
            std::istringstream vs(line.substr(eq + 1));
            if (key == "rank") {
                vs >> mod.rank;
            } else if (key == "weights") {
                long w;
                while (vs >> w) mod.weight.push_back(w);
            } else {
                throw internal_error("module file: unknown key " + key);
            }
            continue;
        }
        std::istringstream ls(line);
        unsigned j, i;
        std::string coeff;
        OPC_REQUIRE(bool(ls >> j >> i >> coeff),
                    "module file line " + std::to_string(lineno) + ": bad triplet");
        OPC_REQUIRE(j < mod.rank && i < mod.rank,
                    "module file line " + std::to_string(lineno) + ": index range");
        (*cur)[j][i] = Rat(coeff);
    }
    OPC_REQUIRE(mod.weight.size() == mod.rank, "module file: weights/rank mismatch");
    OPC_REQUIRE(mod.t.size() == mod.rank && mod.du.size() == mod.rank,
                "module file: t/du tables required");
    return mod;
}

namespace {

using Vec = DividedModule::Vec;

// x = sum_j u^[j] a_j with du a_j = 0, by descent along du.
std::map<unsigned, Vec> expand_u(const DividedModule& mod, const Vec& x,
                                 unsigned depth = 0) {
    OPC_REQUIRE(depth <= mod.rank + 1, "du is not locally nilpotent");
    std::map<unsigned, Vec> out;
    if (x.empty()) return out;
    Vec dx = mod.apply_du(x);
    if (dx.empty()) {
        out.emplace(0u, x);
        return out;
    }
    auto inner = expand_u(mod, dx, depth + 1);
    Vec y;
    for (const auto& [j, a] : inner) {
        Vec lifted = mod.apply_u_div(j + 1, a);
        for (const auto& [i, c] : lifted) vec_add(y, i, c);
        out.emplace(j + 1, a);
    }
    Vec head = vec_sub(x, y);
    if (!head.empty()) out.emplace(0u, head);
    return out;
}

// x in ker du: x = sum_k t^k a_k with a_k in M0, by descent along dt^[.].
std::map<unsigned, Vec> expand_t(const DividedModule& mod, const Vec& x,
                                 unsigned depth = 0) {
    OPC_REQUIRE(depth <= mod.rank + 1, "dt^[.] is not locally nilpotent");
    std::map<unsigned, Vec> out;
    if (x.empty()) return out;
    bool lowest = true;
    for (unsigned k = 1; k <= unsigned(mod.max_weight()) + 1 && lowest; ++k) {
        if (mod.dt_div.count(k) && !mod.apply_dt_div(k, x).empty()) lowest = false;
    }
    if (lowest) {
        out.emplace(0u, x);
        return out;
    }
    Vec f;
    for (unsigned k = 1; k <= unsigned(mod.max_weight()) + 1; ++k) {
        if (!mod.dt_div.count(k)) continue;
        Vec fk = mod.apply_dt_div(k, x);
        if (fk.empty()) continue;
        auto inner = expand_t(mod, fk, depth + 1);
        auto it = inner.find(0);
        if (it == inner.end()) continue;
        Vec lifted = mod.apply_t_pow(k, it->second);
        for (const auto& [i, c] : lifted) vec_add(f, i, c);
        out.emplace(k, it->second);
    }
    Vec head = vec_sub(x, f);
    if (!head.empty()) out.emplace(0u, head);
    return out;
}

bool in_m0(const DividedModule& mod, const Vec& v) {
    if (!mod.apply_du(v).empty()) return false;
    for (unsigned k = 1; k <= unsigned(mod.max_weight()) + 1; ++k)
        if (mod.dt_div.count(k) && !mod.apply_dt_div(k, v).empty()) return false;
    return true;
}

// rank over Q of a list of sparse vectors
unsigned rank_of(std::vector<Vec> rows) {
    unsigned rank = 0;
    std::map<unsigned, Vec> pivots;  // lead index -> row
    for (auto& r : rows) {
        while (!r.empty()) {
            unsigned lead = r.begin()->first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                pivots.emplace(lead, r);
                ++rank;
                break;
            }
            Rat factor = r.begin()->second / it->second.begin()->second;
            for (const auto& [i, c] : it->second) vec_add(r, i, -factor * c);
        }
    }
    return rank;
}

}  // namespace

Decomposition decompose_module(const DividedModule& mod) {
    Decomposition dec;
    dec.expansion.resize(mod.rank);
    std::vector<Vec> m0;
    for (unsigned r = 0; r < mod.rank; ++r) {
        Vec e{{r, 1}};
        std::map<std::pair<unsigned, unsigned>, Vec> coeffs;
        for (const auto& [j, aj] : expand_u(mod, e))
            for (const auto& [i, a] : expand_t(mod, aj)) {
                if (!in_m0(mod, a)) {
                    dec.ok = false;
                    dec.witness = "extracted coefficient not in M0 for basis vector " +
                                  std::to_string(r);
                    return dec;
                }
                coeffs[{i, j}] = a;
                m0.push_back(a);
            }
        // reconstruction must be exact
        Vec rebuilt;
        for (const auto& [ij, a] : coeffs) {
            Vec lift = mod.apply_u_div(ij.second, mod.apply_t_pow(ij.first, a));
            for (const auto& [i, c] : lift) vec_add(rebuilt, i, c);
        }
        if (!(vec_sub(rebuilt, e).empty())) {
            dec.ok = false;
            dec.witness =
                "reconstruction failed for basis vector " + std::to_string(r);
            return dec;
        }
        dec.expansion[r] = std::move(coeffs);
    }
    dec.m0_vectors = std::move(m0);
    return dec;
}

bool t_injective(const DividedModule& mod) {
    // kernel of t restricted to weights < max weight must vanish
    long wmax = mod.max_weight();
    std::vector<unsigned> cols;
    for (unsigned j = 0; j < mod.rank; ++j)
        if (mod.weight[j] < wmax) cols.push_back(j);
    std::vector<DividedModule::Vec> images;
    for (unsigned j : cols) images.push_back(mod.t[j]);
    return rank_of(images) == cols.size();
}

bool du_surjective(const DividedModule& mod) {
    long wmax = mod.max_weight();
    unsigned target_dim = 0;
    for (unsigned j = 0; j < mod.rank; ++j)
        if (mod.weight[j] < wmax) ++target_dim;
    std::vector<DividedModule::Vec> images(mod.du.begin(), mod.du.end());
    return rank_of(images) == target_dim;
}

}  // namespace opcalc
