#include "oracles.hpp"

#include <bitset>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace oracle {

namespace {

void chains(std::uint64_t max_order, std::uint64_t prod, std::vector<std::uint64_t>& cur,
            std::vector<std::vector<std::uint64_t>>& out) {
    out.push_back(cur);
    const std::uint64_t last = cur.empty() ? 1 : cur.back();
    for (std::uint64_t d = std::max<std::uint64_t>(2, last); prod * d <= max_order; d += 1) {
        if (d % last != 0) continue;
        cur.push_back(d);
        chains(max_order, prod * d, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<std::vector<std::uint64_t>> groups_up_to(std::uint64_t max_order) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    chains(max_order, 1, cur, out);
    return out;
}

SmallGroup::SmallGroup(std::vector<std::uint64_t> factors) : factors_(std::move(factors)) {
    for (auto d : factors_) order_ *= d;
    add_.resize(order_ * order_);
    for (std::size_t a = 0; a < order_; ++a) {
        auto ca = coords(a);
        for (std::size_t b = 0; b < order_; ++b) {
            auto cb = coords(b);
            for (std::size_t i = 0; i < ca.size(); ++i) cb[i] = (ca[i] + cb[i]) % factors_[i];
            add_[a * order_ + b] = index(cb);
        }
    }
    elem_order_.resize(order_);
    for (std::size_t a = 0; a < order_; ++a) {
        std::size_t k = 1, x = a;
        while (x != 0) {
            x = add(x, a);
            ++k;
        }
        elem_order_[a] = a == 0 ? 1 : k;
    }
}

std::vector<std::uint64_t> SmallGroup::coords(std::size_t a) const {
    std::vector<std::uint64_t> c(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        c[i] = a % factors_[i];
        a /= factors_[i];
    }
    return c;
}

std::size_t SmallGroup::index(const std::vector<std::uint64_t>& c) const {
    std::size_t a = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) a = a * factors_[i] + c[i];
    return a;
}

namespace {

using Bits = std::bitset<128>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return std::hash<Bits>()(b); }
};

Bits closure_with(const SmallGroup& g, const Bits& h, std::size_t y) {
    Bits out = h;
    std::size_t ty = y;
    while (ty != 0) {
        for (std::size_t e = 0; e < g.order(); ++e)
            if (h[e]) out.set(g.add(e, ty));
        ty = g.add(ty, y);
    }
    return out;
}

// counts[s] = number of automorphisms phi with phi(x) = s, where x has
// coordinates xc. Generator images are chosen one at a time; the subgroup
// they span must grow by exactly d_j at step j, since otherwise the final
// span cannot reach |G|.
std::vector<std::uint64_t> image_counts(const SmallGroup& g, const std::vector<std::uint64_t>& xc) {
    if (g.order() > 128) throw std::invalid_argument("oracle limited to |G| <= 128");
    const std::size_t n = g.order();
    std::unordered_map<Bits, std::vector<std::uint64_t>, BitsHash> level;
    Bits trivial;
    trivial.set(0);
    level[trivial] = std::vector<std::uint64_t>(n, 0);
    level[trivial][0] = 1;
    std::size_t size = 1;
    for (std::size_t j = 0; j < g.rank(); ++j) {
        const std::uint64_t d = g.factors()[j];
        std::unordered_map<Bits, std::vector<std::uint64_t>, BitsHash> next;
        for (const auto& [h, counts] : level) {
            for (std::size_t y = 0; y < n; ++y) {
                if (d % g.element_order(y) != 0) continue;
                const Bits h2 = closure_with(g, h, y);
                if (h2.count() != size * d) continue;
                // x_j * y
                std::size_t xy = 0;
                for (std::uint64_t t = 0; t < xc[j]; ++t) xy = g.add(xy, y);
                auto& dst = next[h2];
                if (dst.empty()) dst.assign(n, 0);
                for (std::size_t s = 0; s < n; ++s)
                    if (counts[s]) dst[g.add(s, xy)] += counts[s];
            }
        }
        level = std::move(next);
        size *= d;
    }
    std::vector<std::uint64_t> total(n, 0);
    for (const auto& [h, counts] : level)
        for (std::size_t s = 0; s < n; ++s) total[s] += counts[s];
    return total;
}

} // namespace

std::uint64_t aut_count(const SmallGroup& g) {
    auto counts = image_counts(g, std::vector<std::uint64_t>(g.rank(), 0));
    return counts[0];
}

std::vector<int> aut_orbits(const SmallGroup& g) {
    std::vector<int> orbit(g.order(), -1);
    int next = 0;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (orbit[x] >= 0) continue;
        auto counts = image_counts(g, g.coords(x));
        for (std::size_t y = 0; y < g.order(); ++y)
            if (counts[y] > 0) {
                if (orbit[y] >= 0) throw std::logic_error("orbit oracle: overlapping orbits");
                orbit[y] = next;
            }
        ++next;
    }
    return orbit;
}

std::uint64_t pairing_count(const SmallGroup& g) {
    if (g.order() > 16) throw std::invalid_argument("pairing oracle limited to |G| <= 16");
    const std::size_t k = g.rank();
    const auto& d = g.factors();
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) slots.emplace_back(i, j);
    std::vector<std::uint64_t> a(k * k, 0);
    std::uint64_t count = 0;
    auto perfect = [&]() {
        for (std::size_t x = 1; x < g.order(); ++x) {
            auto c = g.coords(x);
            bool nonzero = false;
            for (std::size_t j = 0; j < k && !nonzero; ++j) {
                std::uint64_t v = 0;
                for (std::size_t i = 0; i < k; ++i) v += c[i] * a[i * k + j] * (d[j] / std::gcd(d[i], d[j]));
                nonzero = v % d[j] != 0;
            }
            if (!nonzero) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t s) -> void {
        if (s == slots.size()) {
            if (perfect()) ++count;
            return;
        }
        auto [i, j] = slots[s];
        const std::uint64_t m = std::gcd(d[i], d[j]);
        for (std::uint64_t v = 0; v < m; ++v) {
            a[i * k + j] = a[j * k + i] = v;
            self(self, s + 1);
        }
    };
    rec(rec, 0);
    return count;
}

rgk::BigInt cofactor_det(const std::vector<std::vector<long>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    rgk::BigInt total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<long>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(row);
        }
        rgk::BigInt term = cofactor_det(minor) * m[0][c];
        if (c % 2) total -= term;
        else total += term;
    }
    return total;
}

TorsionCounts coset_torsion_counts(const std::vector<std::vector<long>>& m, const std::vector<std::uint64_t>& ks) {
    const std::size_t n = m.size();
    const long det = cofactor_det(m).get_si();
    if (det == 0) throw std::invalid_argument("coset oracle needs a nonsingular matrix");
    // adj(M)_{ij} = (-1)^{i+j} det(minor_{ji})
    std::vector<std::vector<long>> adj(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<long>> minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<long> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(m[r][c]);
                minor.push_back(row);
            }
            long v = n == 1 ? 1 : cofactor_det(minor).get_si();
            adj[i][j] = ((i + j) % 2) ? -v : v;
        }
    // Bounding box of {M t : t in [0,1)^n}.
    std::vector<long> lo(n, 0), hi(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) (m[i][j] < 0 ? lo[i] : hi[i]) += m[i][j];
    TorsionCounts out;
    out.killed_by.assign(ks.size(), 0);
    const long ad = std::labs(det);
    std::vector<long> x(lo);
    for (;;) {
        // t = adj(M) x / det; inside the half-open cell iff 0 <= (adj x)_i * sgn(det) < |det|.
        bool inside = true;
        std::vector<long> ax(n, 0);
        for (std::size_t i = 0; i < n && inside; ++i) {
            long v = 0;
            for (std::size_t j = 0; j < n; ++j) v += adj[i][j] * x[j];
            if (det < 0) v = -v;
            ax[i] = v;
            inside = v >= 0 && v < ad;
        }
        if (inside) {
            ++out.points;
            for (std::size_t q = 0; q < ks.size(); ++q) {
                bool killed = true;
                for (std::size_t i = 0; i < n && killed; ++i) killed = (static_cast<long>(ks[q]) * ax[i]) % ad == 0;
                if (killed) ++out.killed_by[q];
            }
        }
        std::size_t i = 0;
        while (i < n && x[i] == hi[i]) {
            x[i] = lo[i];
            ++i;
        }
        if (i == n) break;
        ++x[i];
    }
    return out;
}

} // namespace oracle
