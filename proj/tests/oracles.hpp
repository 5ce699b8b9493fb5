#pragma once

// Independent brute-force checks used by the unit tests and the acceptance
// binary. Nothing here calls into the code under test except plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "misr/geometry.hpp"

namespace oracle {

using misr::Coord;
using misr::Point;
using misr::Rect;

// Point (px + 1/2, py + 1/2) inside the polygon, by counting crossings of a
// horizontal ray to the right.
inline bool in_polygon_half(const std::vector<Point>& c, Coord px, Coord py) {
    // doubled coordinates
    Coord qx = 2 * px + 1, qy = 2 * py + 1;
    int cross = 0;
    std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point a = c[i], b = c[(i + 1) % n];
        if (a.x != b.x) continue;
        Coord lo = 2 * std::min(a.y, b.y), hi = 2 * std::max(a.y, b.y);
        if (lo < qy && qy < hi && 2 * a.x > qx) ++cross;
    }
    return cross % 2 == 1;
}

inline bool in_rect_half(const Rect& r, Coord px, Coord py) {
    return r.x1 <= px && px + 1 <= r.x2 && r.y1 <= py && py + 1 <= r.y2;
}

// Every unit sample point of [x1,x2) x [y1,y2) is covered by exactly one tile
// when want(p) holds and by none otherwise.
inline bool exact_cover(const std::vector<Rect>& tiles, Coord x1, Coord y1, Coord x2, Coord y2,
                        const std::function<bool(Coord, Coord)>& want) {
    for (Coord x = x1; x < x2; ++x)
        for (Coord y = y1; y < y2; ++y) {
            int k = 0;
            for (const auto& t : tiles) k += in_rect_half(t, x, y);
            if (k != (want(x, y) ? 1 : 0)) return false;
        }
    return true;
}

// Open rectangles a, b intersect iff some half-integer sample lies in both;
// valid for integer coordinates.
inline bool open_rects_meet_sampled(const Rect& a, const Rect& b) {
    for (Coord x = std::max(a.x1, b.x1); x < std::min(a.x2, b.x2); ++x)
        for (Coord y = std::max(a.y1, b.y1); y < std::min(a.y2, b.y2); ++y)
            if (in_rect_half(a, x, y) && in_rect_half(b, x, y)) return true;
    return false;
}

// Brute-force maximum independent set size over all subsets.
inline int brute_mis(const std::vector<Rect>& rs) {
    int n = static_cast<int>(rs.size());
    int best = 0;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        int cnt = __builtin_popcount(m);
        if (cnt <= best) continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if (m >> i & 1)
                for (int j = i + 1; j < n && ok; ++j)
                    if ((m >> j & 1) && open_rects_meet_sampled(rs[i], rs[j])) ok = false;
        if (ok) best = cnt;
    }
    return best;
}

// Separator oracle over a rectangular tiling of a box. Vertices are the cells
// plus the outer face (last index). Cycles are enumerated exhaustively and the
// two sides are found by winding angles, with the curve closed far outside
// the box whenever it passes through the outer face.
struct TilingGraph {
    Rect box;
    std::vector<Rect> cells;
    std::vector<std::vector<char>> adj;
    int n() const { return static_cast<int>(cells.size()) + 1; }
};

inline TilingGraph tiling_graph(const std::vector<Rect>& cells, const Rect& box) {
    TilingGraph g{box, cells, {}};
    int k = static_cast<int>(cells.size());
    g.adj.assign(k + 1, std::vector<char>(k + 1, 0));
    auto overlap = [](Coord a1, Coord a2, Coord b1, Coord b2) { return std::min(a2, b2) - std::max(a1, b1) > 0; };
    for (int a = 0; a < k; ++a) {
        const Rect& p = cells[a];
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            const Rect& q = cells[b];
            bool v = (p.x2 == q.x1 || q.x2 == p.x1) && overlap(p.y1, p.y2, q.y1, q.y2);
            bool h = (p.y2 == q.y1 || q.y2 == p.y1) && overlap(p.x1, p.x2, q.x1, q.x2);
            g.adj[a][b] = v || h;
        }
        bool out = p.x1 == box.x1 || p.x2 == box.x2 || p.y1 == box.y1 || p.y2 == box.y2;
        g.adj[a][k] = g.adj[k][a] = out;
    }
    return g;
}

inline void all_simple_cycles(const TilingGraph& g, std::size_t max_len,
                              const std::function<bool(const std::vector<int>&)>& visit) {
    int n = g.n();
    std::vector<int> path;
    std::vector<char> used(n, 0);
    bool stop = false;
    std::function<void(int)> go = [&](int s) {
        if (stop) return;
        int u = path.back();
        if (path.size() >= 3 && g.adj[u][s] && path[1] < path.back() && visit(path)) stop = true;
        if (path.size() == max_len || stop) return;
        for (int v = s + 1; v < n; ++v)
            if (g.adj[u][v] && !used[v]) {
                used[v] = 1;
                path.push_back(v);
                go(s);
                path.pop_back();
                used[v] = 0;
            }
    };
    for (int s = 0; s < n && !stop; ++s) {
        path = {s};
        used.assign(n, 0);
        used[s] = 1;
        go(s);
    }
}

// Side (0 or 1) of every cell not on the cycle; -1 for cycle cells.
inline std::vector<int> cycle_sides(const TilingGraph& g, const std::vector<int>& cyc) {
    int k = static_cast<int>(g.cells.size());
    std::vector<std::pair<double, double>> pts;
    auto ctr = [&](int v) {
        const Rect& c = g.cells[v];
        return std::make_pair((c.x1 + c.x2) / 2.0, (c.y1 + c.y2) / 2.0);
    };
    auto mid = [&](int a, int b) {
        const Rect& p = g.cells[a];
        const Rect& q = g.cells[b];
        if (p.x2 == q.x1 || q.x2 == p.x1) {
            double x = p.x2 == q.x1 ? p.x2 : p.x1;
            return std::make_pair(x, (std::max(p.y1, q.y1) + std::min(p.y2, q.y2)) / 2.0);
        }
        double y = p.y2 == q.y1 ? p.y2 : p.y1;
        return std::make_pair((std::max(p.x1, q.x1) + std::min(p.x2, q.x2)) / 2.0, y);
    };
    // a point of the box boundary inside cell v, pushed far away
    auto far_exit = [&](int v, std::vector<std::pair<double, double>>& out, bool leaving) {
        const Rect& c = g.cells[v];
        const Rect& b = g.box;
        double big = 1e6;
        std::pair<double, double> on, away;
        if (c.y1 == b.y1) {
            on = {(c.x1 + c.x2) / 2.0, double(b.y1)};
            away = {on.first, -big};
        } else if (c.x2 == b.x2) {
            on = {double(b.x2), (c.y1 + c.y2) / 2.0};
            away = {big, on.second};
        } else if (c.y2 == b.y2) {
            on = {(c.x1 + c.x2) / 2.0, double(b.y2)};
            away = {on.first, big};
        } else {
            on = {double(b.x1), (c.y1 + c.y2) / 2.0};
            away = {-big, on.second};
        }
        if (leaving) {
            out.push_back(on);
            out.push_back(away);
        } else {
            out.push_back(away);
            out.push_back(on);
        }
    };
    std::vector<int> c = cyc;
    auto it = std::find(c.begin(), c.end(), k);
    bool outer = it != c.end();
    if (outer) std::rotate(c.begin(), it + 1, c.end());
    std::size_t m = outer ? c.size() - 1 : c.size();
    for (std::size_t i = 0; i < m; ++i) {
        pts.push_back(ctr(c[i]));
        if (i + 1 < m || !outer) pts.push_back(mid(c[i], c[(i + 1) % c.size()]));
    }
    if (outer) {
        far_exit(c[m - 1], pts, true);
        // close along a huge circle: the far points lie on it approximately, and
        // a circle of radius 1e7 around the box passes outside everything
        double r = 1e7;
        auto a0 = std::atan2(pts.back().second, pts.back().first);
        std::vector<std::pair<double, double>> tail;
        far_exit(c[0], tail, false);
        auto a1 = std::atan2(tail[0].second, tail[0].first);
        double d = a1 - a0;
        while (d <= 0) d += 2 * M_PI;
        for (int s = 0; s <= 64; ++s) {
            double a = a0 + d * s / 64;
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        pts.insert(pts.end(), tail.begin(), tail.end());
    }
    std::vector<int> side(k, -1);
    std::vector<char> on(k + 1, 0);
    for (int v : cyc) on[v] = 1;
    for (int v = 0; v < k; ++v) {
        if (on[v]) continue;
        auto q = ctr(v);
        double total = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto a = pts[i], b = pts[(i + 1) % pts.size()];
            double t1 = std::atan2(a.second - q.second, a.first - q.first);
            double t2 = std::atan2(b.second - q.second, b.first - q.first);
            double dt = t2 - t1;
            while (dt > M_PI) dt -= 2 * M_PI;
            while (dt < -M_PI) dt += 2 * M_PI;
            total += dt;
        }
        side[v] = std::fabs(total) > M_PI ? 1 : 0;
    }
    return side;
}

// Most faces meeting at one corner of the tiling, counting the outer face.
inline int max_face(const TilingGraph& g) {
    int best = 0;
    for (const auto& c : g.cells)
        for (Coord x : {c.x1, c.x2})
            for (Coord y : {c.y1, c.y2}) {
                int f = (x == g.box.x1 || x == g.box.x2 || y == g.box.y1 || y == g.box.y2) ? 1 : 0;
                for (const auto& d : g.cells) f += d.x1 <= x && x <= d.x2 && d.y1 <= y && y <= d.y2;
                best = std::max(best, f);
            }
    return best;
}

// Simple, both sides at most 2W/3 (up to swapping sides), and length within
// 2 sqrt(2 floor(s/2) n).
inline bool separator_ok(const TilingGraph& g, const std::vector<std::int64_t>& w, const std::vector<int>& cyc,
                         int max_face) {
    std::size_t len = cyc.size();
    if (len < 3) return false;
    for (std::size_t i = 0; i < len; ++i)
        if (!g.adj[cyc[i]][cyc[(i + 1) % len]]) return false;
    std::vector<int> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    double bound = 2 * std::sqrt(2.0 * (max_face / 2) * g.n());
    if (static_cast<double>(len) > bound + 1e-9) return false;
    auto side = cycle_sides(g, cyc);
    std::int64_t total = 0, s0 = 0, s1 = 0;
    int k = static_cast<int>(g.cells.size());
    for (int v = 0; v <= k; ++v) total += w[v];
    bool outer_on = std::find(cyc.begin(), cyc.end(), k) != cyc.end();
    for (int v = 0; v < k; ++v) {
        if (side[v] == 0) s0 += w[v];
        if (side[v] == 1) s1 += w[v];
    }
    if (!outer_on) s0 += w[k];
    return 3 * s0 <= 2 * total && 3 * s1 <= 2 * total;
}

inline bool separator_exists(const TilingGraph& g, const std::vector<std::int64_t>& w, int max_face) {
    bool found = false;
    double bound = 2 * std::sqrt(2.0 * (max_face / 2) * g.n());
    all_simple_cycles(g, static_cast<std::size_t>(bound + 1e-9), [&](const std::vector<int>& c) {
        found = separator_ok(g, w, c, max_face);
        return found;
    });
    return found;
}

}  // namespace oracle
