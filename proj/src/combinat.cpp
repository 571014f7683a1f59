#include "opcalc/combinat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace opcalc::combinat {

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 0; i < k; ++i) {
        r *= n - i;
        r = exact_div(r, i + 1, "binomial");
    }
    return r;
}

Int falling_ratio(long i, long j) {
    OPC_REQUIRE(0 <= j && j <= i, "falling_ratio: need 0 <= j <= i");
    Int r = 1;
    for (long v = j + 1; v <= i; ++v) r *= v;
    return r;
}

namespace {
std::mutex cache_mutex;

template <class K, class F>
Int memoized(std::map<K, Int>& cache, const K& key, F&& compute) {
    {
        std::scoped_lock lk(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Int value = compute();
    std::scoped_lock lk(cache_mutex);
    return cache.emplace(key, std::move(value)).first->second;
}
}  // namespace

Int stirling2(unsigned m, unsigned i) {
    static std::map<std::pair<unsigned, unsigned>, Int> cache;
    return memoized(cache, std::make_pair(m, i), [&] {
        Int sum = 0;
        for (unsigned j = 0; j <= i; ++j) {
            Int term = binomial(i, j) * pow_int(Int(i - j), m);
            sum += (j % 2 == 0) ? term : -term;
        }
        return exact_div(sum, factorial(i), "stirling2");
    });
}

Int a_coeff(const std::vector<unsigned>& parts, unsigned j) {
    OPC_REQUIRE(!parts.empty(), "a_coeff: empty index list");
    static std::map<std::pair<std::vector<unsigned>, unsigned>, Int> cache;
    return memoized(cache, std::make_pair(parts, j), [&]() -> Int {
        if (parts.size() == 1) return j == 0 ? 1 : 0;
        long rest = std::accumulate(parts.begin() + 1, parts.end(), 0L);
        std::vector<unsigned> tail(parts.begin() + 1, parts.end());
        Int sum = 0;
        for (unsigned k = 0; k <= j; ++k) {
            Int c = factorial(k) * binomial(parts[0], k) *
                    binomial(rest - long(j) + long(k), k);
            if (c != 0) sum += c * a_coeff(tail, j - k);
        }
        return sum;
    });
}

Int A_coeff(unsigned d, unsigned i, unsigned n) {
    if (d == 0) return i == 0 ? 1 : 0;
    static std::map<std::tuple<unsigned, unsigned, unsigned>, Int> cache;
    return memoized(cache, std::make_tuple(d, i, n), [&]() -> Int {
        if (i < d) return 0;  // every part is >= 1
        Int sum = 0;
        for (unsigned i1 = 1; i1 + (d - 1) <= i; ++i1)
            sum += binomial(n, i1) * A_coeff(d - 1, i - i1, n);
        return sum;
    });
}

namespace {
void weak_comps(unsigned total, unsigned parts, std::vector<unsigned>& acc,
                std::vector<std::vector<unsigned>>& out) {
    if (parts == 1) {
        acc.push_back(total);
        out.push_back(acc);
        acc.pop_back();
        return;
    }
    for (unsigned v = 0; v <= total; ++v) {
        acc.push_back(v);
        weak_comps(total - v, parts - 1, acc, out);
        acc.pop_back();
    }
}
}  // namespace

Int b_coeff(unsigned i, unsigned l, unsigned n) {
    OPC_REQUIRE(l <= i, "b_coeff: need l <= i");
    OPC_REQUIRE(n >= 1, "b_coeff: need n >= 1");
    std::vector<std::vector<unsigned>> comps;
    std::vector<unsigned> acc;
    weak_comps(i, n, acc, comps);
    Int sum = 0;
    for (const auto& c : comps) {
        Int multi = factorial(i);
        for (unsigned part : c) multi = exact_div(multi, factorial(part), "b_coeff");
        sum += multi * a_coeff(c, l);
    }
    return sum;
}

std::vector<std::vector<unsigned>> compositions(unsigned total, unsigned parts,
                                                unsigned min_part) {
    std::vector<std::vector<unsigned>> out;
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<unsigned> acc;
    auto rec = [&](auto&& self, unsigned rem, unsigned left) -> void {
        if (left == 1) {
            if (rem >= min_part) {
                acc.push_back(rem);
                out.push_back(acc);
                acc.pop_back();
            }
            return;
        }
        for (unsigned v = min_part; v + min_part * (left - 1) <= rem; ++v) {
            acc.push_back(v);
            self(self, rem - v, left - 1);
            acc.pop_back();
        }
    };
    rec(rec, total, parts);
    return out;
}

}  // namespace opcalc::combinat
