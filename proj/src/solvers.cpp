#include "misr/solvers.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <tuple>

namespace misr {

bool is_independent(const std::vector<Rect>& rects, const std::vector<int>& indices) {
    for (std::size_t a = 0; a < indices.size(); ++a)
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            if (indices[a] == indices[b]) return false;
            if (intersects(rects.at(indices[a]), rects.at(indices[b]))) return false;
        }
    return true;
}

namespace {

template <int W>
struct Bits {
    std::array<std::uint64_t, W> w{};

    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1ULL; }
    bool none() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
    int first() const {
        for (int k = 0; k < W; ++k)
            if (w[k]) return k * 64 + std::countr_zero(w[k]);
        return -1;
    }
    Bits operator&(const Bits& o) const {
        Bits r;
        for (int k = 0; k < W; ++k) r.w[k] = w[k] & o.w[k];
        return r;
    }
    Bits andnot(const Bits& o) const {
        Bits r;
        for (int k = 0; k < W; ++k) r.w[k] = w[k] & ~o.w[k];
        return r;
    }
    int and_count(const Bits& o) const {
        int c = 0;
        for (int k = 0; k < W; ++k) c += std::popcount(w[k] & o.w[k]);
        return c;
    }
    template <class F>
    void for_each(F&& f) const {
        for (int k = 0; k < W; ++k) {
            auto x = w[k];
            while (x) {
                int b = std::countr_zero(x);
                f(k * 64 + b);
                x &= x - 1;
            }
        }
    }
};

template <int W>
class Searcher {
public:
    Searcher(const std::vector<Rect>& rects, std::int64_t budget) : n_(static_cast<int>(rects.size())), budget_(budget) {
        adj_.resize(n_);
        closed_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j)
                if (i != j && intersects(rects[i], rects[j])) adj_[i].set(j);
            closed_[i] = adj_[i];
            closed_[i].set(i);
        }
        for (int i = 0; i < n_; ++i) all_.set(i);
    }

    Bits<W> all() const { return all_; }

    // Largest independent set size inside P.
    int max_size(const Bits<W>& p) {
        best_ = 0;
        target_ = n_ + 1;
        search(p, 0);
        return best_;
    }

    // True if P holds an independent set of size k.
    bool has_size(const Bits<W>& p, int k) {
        if (k <= 0) return true;
        best_ = k - 1;
        target_ = k;
        search(p, 0);
        return best_ >= k;
    }

    IndependentSet lexicographic(int opt) {
        IndependentSet out;
        Bits<W> p = all_;
        int need = opt;
        for (int i = 0; i < n_ && need > 0; ++i) {
            if (!p.test(i)) continue;
            Bits<W> q = p.andnot(closed_[i]);
            for (int j = 0; j <= i; ++j) q.reset(j);
            if (has_size(q, need - 1)) {
                out.indices.push_back(i);
                --need;
                p = q;
            } else {
                p.reset(i);
            }
        }
        return out;
    }

private:
    int clique_cover(Bits<W> p) const {
        int cliques = 0;
        while (!p.none()) {
            int v = p.first();
            Bits<W> cand = p & adj_[v];
            p.reset(v);
            while (!cand.none()) {
                int u = cand.first();
                p.reset(u);
                cand = cand & adj_[u];
            }
            ++cliques;
        }
        return cliques;
    }

    void search(const Bits<W>& p, int cur) {
        if (best_ >= target_) return;
        if (++nodes_ > budget_) throw BudgetExceeded("exact_mis: node budget exceeded");
        if (p.none()) {
            best_ = std::max(best_, cur);
            return;
        }
        int cnt = p.count();
        if (cur + cnt <= best_) return;
        int v = -1, deg = -1;
        p.for_each([&](int i) {
            int d = p.and_count(adj_[i]);
            if (d > deg) {
                deg = d;
                v = i;
            }
        });
        if (deg == 0) {
            best_ = std::max(best_, cur + cnt);
            return;
        }
        if (cur + clique_cover(p) <= best_) return;
        search(p.andnot(closed_[v]), cur + 1);
        Bits<W> q = p;
        q.reset(v);
        search(q, cur);
    }

    int n_;
    std::int64_t budget_;
    std::int64_t nodes_ = 0;
    int best_ = 0;
    int target_ = 0;
    std::vector<Bits<W>> adj_, closed_;
    Bits<W> all_;
};

template <int W>
IndependentSet solve_exact(const std::vector<Rect>& rects, std::int64_t budget, bool lex) {
    Searcher<W> s(rects, budget);
    int opt = s.max_size(s.all());
    if (!lex) {
        IndependentSet out;
        out.indices.assign(opt, -1);
        return out;
    }
    return s.lexicographic(opt);
}

IndependentSet dispatch(const std::vector<Rect>& rects, std::int64_t budget, bool lex) {
    auto n = rects.size();
    if (n == 0) return {};
    if (n <= 64) return solve_exact<1>(rects, budget, lex);
    if (n <= 128) return solve_exact<2>(rects, budget, lex);
    if (n <= 256) return solve_exact<4>(rects, budget, lex);
    if (n <= 1024) return solve_exact<16>(rects, budget, lex);
    throw BudgetExceeded("exact_mis: more than 1024 rectangles");
}

}  // namespace

IndependentSet exact_mis(const std::vector<Rect>& rects, std::int64_t budget) { return dispatch(rects, budget, true); }

IndependentSet exact_mis(const Instance& inst, std::int64_t budget) { return exact_mis(inst.rects, budget); }

int exact_mis_value(const std::vector<Rect>& rects, std::int64_t budget) {
    return dispatch(rects, budget, false).value();
}

int naive_mis_value(const std::vector<Rect>& rects) {
    int n = static_cast<int>(rects.size());
    if (n > 24) throw std::invalid_argument("naive_mis_value: n > 24");
    std::vector<std::uint32_t> adj(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && intersects(rects[i], rects[j])) adj[i] |= 1u << j;
    std::uint32_t full = n == 0 ? 0 : (n == 32 ? ~0u : ((1u << n) - 1));
    std::vector<char> ok(static_cast<std::size_t>(full) + 1, 0);
    ok[0] = 1;
    int best = 0;
    for (std::uint32_t m = 1; m <= full && m != 0; ++m) {
        int i = std::countr_zero(m);
        std::uint32_t rest = m & (m - 1);
        ok[m] = ok[rest] && !(adj[i] & rest);
        if (ok[m]) best = std::max(best, std::popcount(m));
    }
    return best;
}

std::vector<int> interval_mis(const std::vector<std::pair<Coord, Coord>>& iv) {
    std::vector<int> order(iv.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(iv[a].second, iv[a].first, a) < std::tie(iv[b].second, iv[b].first, b);
    });
    std::vector<int> out;
    bool any = false;
    Coord last = 0;
    for (int i : order)
        if (!any || iv[i].first >= last) {
            out.push_back(i);
            last = iv[i].second;
            any = true;
        }
    std::sort(out.begin(), out.end());
    return out;
}

int approx_factor(int n) {
    if (n <= 1) return 1;
    int l = 0;
    while ((1 << l) < n) ++l;
    return l + 1;
}

namespace {

DivideResult divide(const std::vector<Rect>& rects, const std::vector<int>& ids) {
    DivideResult res;
    if (ids.empty()) return res;
    // The vertical line sits at e + 1/2 so the three classes are unambiguous:
    // stabbed x1 <= e < x2, left x2 <= e, right x1 > e.
    std::vector<Coord> cand;
    for (int i : ids) {
        cand.push_back(rects[i].x1);
        cand.push_back(rects[i].x2);
    }
    cand = sorted_unique(std::move(cand));
    Coord best_e = 0;
    std::size_t best_cost = ids.size() + 1;
    for (Coord e : cand) {
        std::size_t l = 0, r = 0, s = 0;
        for (int i : ids) {
            if (rects[i].x2 <= e)
                ++l;
            else if (rects[i].x1 > e)
                ++r;
            else
                ++s;
        }
        if (s == 0 && (l == ids.size() || r == ids.size())) continue;
        std::size_t cost = std::max(l, r);
        if (cost < best_cost) {
            best_cost = cost;
            best_e = e;
        }
    }
    std::vector<int> left, right, stab;
    for (int i : ids) {
        if (rects[i].x2 <= best_e)
            left.push_back(i);
        else if (rects[i].x1 > best_e)
            right.push_back(i);
        else
            stab.push_back(i);
    }
    std::vector<std::pair<Coord, Coord>> iv;
    for (int i : stab) iv.emplace_back(rects[i].y1, rects[i].y2);
    auto pick = interval_mis(iv);
    auto l = divide(rects, left);
    auto r = divide(rects, right);
    res.levels = 1 + std::max(l.levels, r.levels);
    if (static_cast<int>(pick.size()) >= l.set.value() + r.set.value()) {
        for (int k : pick) res.set.indices.push_back(stab[k]);
    } else {
        res.set.indices = l.set.indices;
        res.set.indices.insert(res.set.indices.end(), r.set.indices.begin(), r.set.indices.end());
        // stabbed rectangles that still fit are free
        for (int i : stab) {
            bool fits = true;
            for (int j : res.set.indices)
                if (intersects(rects[i], rects[j])) {
                    fits = false;
                    break;
                }
            if (fits) res.set.indices.push_back(i);
        }
    }
    std::sort(res.set.indices.begin(), res.set.indices.end());
    return res;
}

}  // namespace

DivideResult approx_divide_detail(const std::vector<Rect>& rects) {
    std::vector<int> ids(rects.size());
    std::iota(ids.begin(), ids.end(), 0);
    return divide(rects, ids);
}

IndependentSet approx_divide(const std::vector<Rect>& rects) { return approx_divide_detail(rects).set; }

IndependentSet approx_divide(const Instance& inst) { return approx_divide(inst.rects); }

IndependentSet approx_wrapped(const Instance& inst) {
    if (inst.n() == 0) return {};
    auto [kernel, klift] = kernelize(inst);
    auto [canon, clift] = canonicalize(kernel.rects);
    auto sol = approx_divide(canon);
    IndependentSet out;
    out.indices = klift.lift(clift.lift(sol.indices));
    return out;
}

}  // namespace misr
