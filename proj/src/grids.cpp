#include "misr/grids.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace misr {

Rational Rational::of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::int64_t ceil_div(std::int64_t v, const Rational& rho) {
    if (rho.num <= 0) throw std::invalid_argument("ceil_div: rho must be positive");
    std::int64_t a = v * rho.den;
    return (a + rho.num - 1) / rho.num;
}

Grid Grid::boundary(const Rect& box) {
    Grid g;
    g.vlines = {box.x1, box.x2};
    g.hlines = {box.y1, box.y2};
    return g;
}

int Grid::vstrip_of(Coord a, Coord b) const {
    auto it = std::upper_bound(vlines.begin(), vlines.end(), a);
    if (it == vlines.begin() || it == vlines.end()) return -1;
    return b <= *it ? static_cast<int>(it - vlines.begin()) - 1 : -1;
}

int Grid::hstrip_of(Coord a, Coord b) const {
    auto it = std::upper_bound(hlines.begin(), hlines.end(), a);
    if (it == hlines.begin() || it == hlines.end()) return -1;
    return b <= *it ? static_cast<int>(it - hlines.begin()) - 1 : -1;
}

namespace {

bool has(const std::vector<Coord>& v, Coord x) { return std::binary_search(v.begin(), v.end(), x); }

std::vector<int> in_strip(const Instance& inst, const std::vector<int>& idx, Coord lo, Coord hi, bool vertical) {
    std::vector<int> out;
    for (int i : idx) {
        const Rect& r = inst.rects[i];
        Coord a = vertical ? r.x1 : r.y1, b = vertical ? r.x2 : r.y2;
        if (lo <= a && b <= hi) out.push_back(i);
    }
    return out;
}

}  // namespace

StripReport check_rho_accurate(const Grid& g, const Instance& inst, const FakeSet& f, const Rational& rho,
                               OptOracle& orc, bool parallel) {
    StripReport rep;
    std::ostringstream why;
    const Rect& b = inst.box;
    bool sorted = std::is_sorted(g.vlines.begin(), g.vlines.end()) && std::is_sorted(g.hlines.begin(), g.hlines.end()) &&
                  std::adjacent_find(g.vlines.begin(), g.vlines.end()) == g.vlines.end() &&
                  std::adjacent_find(g.hlines.begin(), g.hlines.end()) == g.hlines.end();
    rep.aligned = sorted && g.vlines.size() >= 2 && g.hlines.size() >= 2 && g.vlines.front() == b.x1 &&
                  g.vlines.back() == b.x2 && g.hlines.front() == b.y1 && g.hlines.back() == b.y2;
    if (rep.aligned)
        for (const auto& q : f.rects)
            if (!has(g.vlines, q.x1) || !has(g.vlines, q.x2) || !has(g.hlines, q.y1) || !has(g.hlines, q.y2)) {
                rep.aligned = false;
                why << "fake " << q.x1 << ',' << q.y1 << ',' << q.x2 << ',' << q.y2 << " not aligned; ";
            }
    if (!sorted) why << "grid lines not sorted and unique; ";
    auto idx = induced_indices(inst, f);
    rep.opt = orc.value(idx);
    rep.limit = ceil_div(rep.opt, rho);

    // strips 0..nv-1 vertical, then horizontal
    int nv = std::max<int>(0, static_cast<int>(g.vlines.size()) - 1);
    int nh = std::max<int>(0, static_cast<int>(g.hlines.size()) - 1);
    int total = nv + nh;
    std::vector<int> val(total, 0);
    std::vector<char> failed(total, 0);
    auto one = [&](int s) {
        try {
            bool vert = s < nv;
            int k = vert ? s : s - nv;
            const auto& lines = vert ? g.vlines : g.hlines;
            val[s] = orc.value(in_strip(inst, idx, lines[k], lines[k + 1], vert));
        } catch (const std::exception&) {
            failed[s] = 1;
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < total; ++s) one(s);
    } else {
        for (int s = 0; s < total; ++s) one(s);
    }
    if (std::any_of(failed.begin(), failed.end(), [](char c) { return c != 0; }))
        throw BudgetExceeded("check_rho_accurate: strip solve failed");
    rep.accurate = true;
    for (int s = 0; s < total; ++s) {
        rep.worst_strip = std::max(rep.worst_strip, val[s]);
        if (val[s] > rep.limit) {
            rep.accurate = false;
            why << (s < nv ? "vertical" : "horizontal") << " strip " << (s < nv ? s : s - nv) << " has optimum "
                << val[s] << " > " << rep.limit << "; ";
        }
    }
    rep.detail = why.str();
    return rep;
}

bool is_rho_accurate(const Grid& g, const Instance& inst, const FakeSet& f, const Rational& rho) {
    OptOracle orc(inst);
    return check_rho_accurate(g, inst, f, rho, orc).ok();
}

namespace {

// Lines V_1.. of the threshold sweep. A strip [V_t, x] is a candidate when the
// approximation on its rectangles reaches tau/2, with tau = tnum / tden.
std::vector<Coord> sweep_lines(const Instance& inst, const std::vector<int>& idx, std::int64_t tnum, std::int64_t tden,
                               bool vertical) {
    std::vector<Coord> out;
    if (tnum <= 0) return out;
    auto lo_of = [&](int i) { return vertical ? inst.rects[i].x1 : inst.rects[i].y1; };
    auto hi_of = [&](int i) { return vertical ? inst.rects[i].x2 : inst.rects[i].y2; };
    std::vector<Coord> ends;
    for (int i : idx) ends.push_back(hi_of(i));
    ends = sorted_unique(std::move(ends));
    Coord vt = vertical ? inst.box.x1 : inst.box.y1;
    std::size_t pos = 0;
    while (true) {
        bool found = false;
        for (; pos < ends.size(); ++pos) {
            Coord x = ends[pos];
            if (x <= vt) continue;
            std::vector<Rect> strip;
            for (int i : idx)
                if (lo_of(i) >= vt && hi_of(i) <= x) strip.push_back(inst.rects[i]);
            if (strip.empty()) continue;
            std::int64_t val = approx_divide(strip).value();
            if (2 * val * tden >= tnum) {
                out.push_back(x);
                vt = x;
                found = true;
                ++pos;
                break;
            }
        }
        if (!found) break;
    }
    return out;
}

Grid assemble(const Instance& inst, const FakeSet& f, std::vector<Coord> v, std::vector<Coord> h, const Rational& rho) {
    const Rect& b = inst.box;
    v.insert(v.end(), {b.x1, b.x2});
    h.insert(h.end(), {b.y1, b.y2});
    for (const auto& q : f.rects) {
        v.insert(v.end(), {q.x1, q.x2});
        h.insert(h.end(), {q.y1, q.y2});
    }
    Grid g;
    g.vlines = sorted_unique(std::move(v));
    g.hlines = sorted_unique(std::move(h));
    g.declared_rho = rho;
    return g;
}

}  // namespace

Grid build_rho_accurate_grid(const Instance& inst, const FakeSet& f, const Rational& rho, const GridConfig& cfg,
                             GridBuildStats* stats) {
    if (rho.num < rho.den || rho.den <= 0) throw std::invalid_argument("build_rho_accurate_grid: rho must be >= 1");
    if (!is_valid_fake_set(f, inst.box)) throw std::invalid_argument("build_rho_accurate_grid: invalid fake set");
    GridBuildStats st;
    auto idx = induced_indices(inst, f);
    st.factor = approx_factor(static_cast<int>(idx.size()));
    std::vector<Rect> sub;
    for (int i : idx) sub.push_back(inst.rects[i]);
    st.opt_estimate = approx_divide(sub).value();
    const std::int64_t fac = st.factor;
    std::vector<Coord> v1, h1;
    if (st.opt_estimate * fac < cfg.small_opt_w) {
        // OPT' < w: exact value
        st.small_branch = true;
        std::int64_t opt = exact_mis_value(sub, cfg.budget);
        st.chosen_w = opt;
        // tau = OPT / (rho f)
        std::int64_t tnum = opt * rho.den, tden = rho.num * fac;
        v1 = sweep_lines(inst, idx, tnum, tden, true);
        h1 = sweep_lines(inst, idx, tnum, tden, false);
    } else {
        std::int64_t w0 = st.opt_estimate;
        // 2 rho f strips suffice once W equals the optimum
        std::int64_t cap = (2 * rho.num * fac) / rho.den + 2;
        bool done = false;
        for (std::int64_t w = w0; w <= fac * w0 && !done; ++w) {
            std::int64_t tnum = w * rho.den, tden = rho.num * fac;
            auto v = sweep_lines(inst, idx, tnum, tden, true);
            auto h = sweep_lines(inst, idx, tnum, tden, false);
            if (static_cast<std::int64_t>(v.size()) + 1 <= cap && static_cast<std::int64_t>(h.size()) + 1 <= cap) {
                v1 = std::move(v);
                h1 = std::move(h);
                st.chosen_w = w;
                done = true;
            }
        }
        if (!done) {
            // unreachable when the approximation meets its factor; fall back to the exact value
            std::int64_t opt = exact_mis_value(sub, cfg.budget);
            st.chosen_w = opt;
            v1 = sweep_lines(inst, idx, opt * rho.den, rho.num * fac, true);
            h1 = sweep_lines(inst, idx, opt * rho.den, rho.num * fac, false);
        }
    }
    Grid g = assemble(inst, f, std::move(v1), std::move(h1), rho);
    st.z = static_cast<int>(std::max(g.vlines.size(), g.hlines.size()));
    st.z_bound = (4 * rho.num * fac + rho.den - 1) / rho.den + 2LL * f.size() + 2;
    if (stats) *stats = st;
    return g;
}

Grid refine_aligned_grid(const Grid& g, const Instance& inst, const FakeSet& f, const Rational& rho_prime,
                         const GridConfig& cfg, int* fresh_size) {
    if (g.declared_rho < rho_prime) throw std::invalid_argument("refine_aligned_grid: rho' exceeds the grid's rho");
    Grid fresh = build_rho_accurate_grid(inst, f, rho_prime, cfg);
    if (fresh_size) *fresh_size = fresh.size();
    auto pick = [](const std::vector<Coord>& base, const std::vector<Coord>& want) {
        std::vector<Coord> out{base.front(), base.back()};
        for (Coord x : want) {
            auto it = std::lower_bound(base.begin(), base.end(), x);
            if (it != base.end() && *it == x) {
                out.push_back(x);
                continue;
            }
            if (it != base.begin()) out.push_back(*(it - 1));
            if (it != base.end()) out.push_back(*it);
        }
        return sorted_unique(std::move(out));
    };
    Grid out;
    out.vlines = pick(g.vlines, fresh.vlines);
    out.hlines = pick(g.hlines, fresh.hlines);
    out.declared_rho = rho_prime;
    return out;
}

}  // namespace misr
