#include "opcalc/witt.hpp"

#include <numeric>
#include <sstream>

#include "opcalc/combinat.hpp"

namespace opcalc {

void ZeroCycleModel::add_term(Elem& e, Key k, const Rat& c) const {
    if (c == 0) return;
    unsigned deg = std::accumulate(k.xexp.begin(), k.xexp.end(), 0u);
    if (deg > g_) return;  // truncated
    auto it = e.find(k);
    if (it == e.end()) {
        e.emplace(std::move(k), c);
    } else {
        it->second += c;
        if (it->second == 0) e.erase(it);
    }
}

ZeroCycleModel::Elem ZeroCycleModel::one() const {
    Elem e;
    add_term(e, Key{std::vector<unsigned>(r_, 0), 0}, 1);
    return e;
}

ZeroCycleModel::Elem ZeroCycleModel::x(unsigned p) const {
    OPC_REQUIRE(1 <= p && p <= r_, "generator index out of range");
    Key k{std::vector<unsigned>(r_, 0), 0};
    k.xexp[p - 1] = 1;
    Elem e;
    add_term(e, std::move(k), 1);
    return e;
}

ZeroCycleModel::Elem ZeroCycleModel::t() const {
    Elem e;
    add_term(e, Key{std::vector<unsigned>(r_, 0), 1}, 1);
    return e;
}

ZeroCycleModel::Elem ZeroCycleModel::add(const Elem& a, const Elem& b) const {
    Elem e = a;
    for (const auto& [k, c] : b) add_term(e, k, c);
    return e;
}

ZeroCycleModel::Elem ZeroCycleModel::scale(const Elem& a, const Rat& c) const {
    Elem e;
    if (c == 0) return e;
    for (const auto& [k, v] : a) e.emplace(k, v * c);
    return e;
}

ZeroCycleModel::Elem ZeroCycleModel::mul(const Elem& a, const Elem& b) const {
    Elem e;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            Key k = ka;
            for (unsigned i = 0; i < r_; ++i) k.xexp[i] += kb.xexp[i];
            k.texp += kb.texp;
            add_term(e, std::move(k), ca * cb);
        }
    return e;
}

ZeroCycleModel::Elem ZeroCycleModel::pow(const Elem& a, unsigned e) const {
    Elem r = one();
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

ZeroCycleModel::Elem ZeroCycleModel::delta(unsigned m, const Elem& a) const {
    OPC_REQUIRE(m >= 1, "delta_m needs m >= 1");
    Elem out;
    for (const auto& [k, c] : a)
        for (unsigned p = 0; p < r_; ++p) {
            if (!k.xexp[p]) continue;
            // e x^{e-1} * x^m on the p-th generator
            Key nk = k;
            nk.xexp[p] += m - 1;
            add_term(out, std::move(nk), c * Rat(k.xexp[p]));
        }
    return out;
}

ZeroCycleModel::Elem ZeroCycleModel::p_m1(unsigned m, const Elem& a) const {
    OPC_REQUIRE(m >= 1, "p_m1 needs m >= 1");
    Elem out;
    for (unsigned j = 0; j + 1 <= m; ++j) {
        Elem d = delta(m - j, a);
        for (auto& [k, c] : d) {
            Key nk = k;
            nk.texp += j;
            add_term(out, std::move(nk), c * Rat(combinat::binomial(m, j)));
        }
    }
    for (const auto& [k, c] : a) {
        if (!k.texp) continue;  // t^m d/dt
        Key nk = k;
        nk.texp += m - 1;
        add_term(out, std::move(nk), c * Rat(Int(k.texp)));
    }
    return out;
}

std::string ZeroCycleModel::to_string(const Elem& a) const {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : a) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (unsigned i = 0; i < r_; ++i)
            if (k.xexp[i]) os << "*x" << i + 1 << "^" << k.xexp[i];
        if (k.texp) os << "*t^" << k.texp;
    }
    return os.str();
}

GroupAlgebra::Elem GroupAlgebra::point(const Key& v) const {
    OPC_REQUIRE(v.size() == rank_, "point of wrong rank");
    return {{v, 1}};
}

GroupAlgebra::Elem GroupAlgebra::add(const Elem& a, const Elem& b) const {
    Elem e = a;
    for (const auto& [k, c] : b) {
        auto it = e.find(k);
        if (it == e.end())
            e.emplace(k, c);
        else if ((it->second += c) == 0)
            e.erase(it);
    }
    return e;
}

GroupAlgebra::Elem GroupAlgebra::scale(const Elem& a, const Rat& c) const {
    Elem e;
    if (c == 0) return e;
    for (const auto& [k, v] : a) e.emplace(k, v * c);
    return e;
}

GroupAlgebra::Elem GroupAlgebra::mul(const Elem& a, const Elem& b) const {
    Elem e;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            Key k(rank_);
            for (unsigned i = 0; i < rank_; ++i) k[i] = ka[i] + kb[i];
            auto it = e.find(k);
            if (it == e.end()) {
                e.emplace(std::move(k), ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) e.erase(it);
            }
        }
    return e;
}

GroupAlgebra::Elem GroupAlgebra::pow(const Elem& a, unsigned e) const {
    Elem r = zero_point();
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

GroupAlgebra::Elem GroupAlgebra::pushforward(long m, const Elem& a) const {
    Elem e;
    for (const auto& [k, c] : a) {
        Key nk(rank_);
        for (unsigned i = 0; i < rank_; ++i) nk[i] = m * k[i];
        auto it = e.find(nk);
        if (it == e.end()) {
            e.emplace(std::move(nk), c);
        } else {
            it->second += c;
            if (it->second == 0) e.erase(it);
        }
    }
    return e;
}

bool GroupAlgebra::pontryagin_identity(unsigned m, const Key& v) const {
    OPC_REQUIRE(m >= 1, "pontryagin_identity needs m >= 1");
    Elem base = add(point(v), scale(zero_point(), -1));
    Elem lhs = pow(base, m);
    Elem rhs;
    for (unsigned i = 0; i + 1 <= m; ++i) {
        Rat c = combinat::binomial(m, i);
        if (i % 2) c = -c;
        rhs = add(rhs, scale(pushforward(long(m) - long(i), base), c));
    }
    return lhs == rhs;
}

}  // namespace opcalc
