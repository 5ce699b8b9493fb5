#include "misr/separators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace misr {

std::int64_t DualGraph::total_weight() const { return std::accumulate(weight.begin(), weight.end(), std::int64_t{0}); }

bool DualGraph::has_edge(int a, int b) const { return std::binary_search(adj[a].begin(), adj[a].end(), b); }

namespace {

bool share_side(const Rect& a, const Rect& b) {
    if (a.x2 == b.x1 || b.x2 == a.x1) return std::min(a.y2, b.y2) > std::max(a.y1, b.y1);
    if (a.y2 == b.y1 || b.y2 == a.y1) return std::min(a.x2, b.x2) > std::max(a.x1, b.x1);
    return false;
}

bool touches_box(const Rect& c, const Rect& box) {
    return c.x1 == box.x1 || c.x2 == box.x2 || c.y1 == box.y1 || c.y2 == box.y2;
}

}  // namespace

DualGraph build_dual(const std::vector<Rect>& cells, const Rect& box) {
    DualGraph g;
    g.box = box;
    g.cells = cells;
    int k = static_cast<int>(cells.size());
    g.adj.assign(k + 1, {});
    g.weight.assign(k + 1, 0);
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b)
            if (share_side(cells[a], cells[b])) {
                g.adj[a].push_back(b);
                g.adj[b].push_back(a);
            }
        if (touches_box(cells[a], box)) {
            g.adj[a].push_back(k);
            g.adj[k].push_back(a);
        }
    }
    for (auto& l : g.adj) std::sort(l.begin(), l.end());
    // faces of the dual are the corners of the partition
    for (const auto& c : cells)
        for (Coord x : {c.x1, c.x2})
            for (Coord y : {c.y1, c.y2}) {
                int faces = (x == box.x1 || x == box.x2 || y == box.y1 || y == box.y2) ? 1 : 0;
                for (const auto& d : cells)
                    if (d.x1 <= x && x <= d.x2 && d.y1 <= y && y <= d.y2) ++faces;
                g.max_face = std::max(g.max_face, faces);
            }
    g.biconnected = g.n() >= 3 && articulation_points(g).empty();
    return g;
}

DualGraph build_dual(const CellPartition& p) { return build_dual(p.cells, p.box); }

std::vector<int> articulation_points(const DualGraph& g) {
    int n = g.n();
    std::vector<int> disc(n, -1), low(n, 0), out;
    std::vector<char> art(n, 0);
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int u, int parent) {
        disc[u] = low[u] = timer++;
        int children = 0;
        for (int v : g.adj[u]) {
            if (v == parent) continue;
            if (disc[v] >= 0) {
                low[u] = std::min(low[u], disc[v]);
                continue;
            }
            ++children;
            dfs(v, u);
            low[u] = std::min(low[u], low[v]);
            if (parent >= 0 && low[v] >= disc[u]) art[u] = 1;
        }
        if (parent < 0 && children > 1) art[u] = 1;
    };
    for (int s = 0; s < n; ++s)
        if (disc[s] < 0) dfs(s, -1);
    for (int i = 0; i < n; ++i)
        if (art[i]) out.push_back(i);
    return out;
}

bool SeparatorCycle::passes_outer(const DualGraph& g) const {
    return std::find(cycle.begin(), cycle.end(), g.outer()) != cycle.end();
}

namespace {

struct P2 {
    std::int64_t x, y;
};

bool inside(const std::vector<P2>& poly, P2 q) {
    bool in = false;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        P2 a = poly[i], b = poly[(i + 1) % n];
        if ((a.y > q.y) == (b.y > q.y)) continue;
        std::int64_t cross = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
        if (b.y > a.y ? cross > 0 : cross < 0) in = !in;
    }
    return in;
}

// Everything below is in doubled coordinates.
P2 center(const Rect& c) { return {c.x1 + c.x2, c.y1 + c.y2}; }

P2 shared_mid(const Rect& a, const Rect& b) {
    if (a.x2 == b.x1) return {2 * a.x2, std::max(a.y1, b.y1) + std::min(a.y2, b.y2)};
    if (b.x2 == a.x1) return {2 * a.x1, std::max(a.y1, b.y1) + std::min(a.y2, b.y2)};
    if (a.y2 == b.y1) return {std::max(a.x1, b.x1) + std::min(a.x2, b.x2), 2 * a.y2};
    return {std::max(a.x1, b.x1) + std::min(a.x2, b.x2), 2 * a.y1};
}

struct Ring {
    std::int64_t x1, y1, x2, y2;
    std::int64_t w() const { return x2 - x1; }
    std::int64_t h() const { return y2 - y1; }
    std::int64_t perimeter() const { return 2 * (w() + h()); }
    // counter-clockwise arc position starting at the lower left corner
    std::int64_t pos(P2 p) const {
        if (p.y == y1) return p.x - x1;
        if (p.x == x2) return w() + (p.y - y1);
        if (p.y == y2) return w() + h() + (x2 - p.x);
        return 2 * w() + h() + (y2 - p.y);
    }
    P2 corner(int k) const {
        switch (k) {
            case 0: return {x1, y1};
            case 1: return {x2, y1};
            case 2: return {x2, y2};
            default: return {x1, y2};
        }
    }
    std::int64_t corner_pos(int k) const {
        switch (k) {
            case 0: return 0;
            case 1: return w();
            case 2: return w() + h();
            default: return 2 * w() + h();
        }
    }
};

// Box-side exits of a cell: (point on the box, point on the ring).
std::vector<std::pair<P2, P2>> exits(const Rect& c, const Rect& box, const Ring& ring) {
    std::vector<std::pair<P2, P2>> out;
    if (c.y1 == box.y1) out.push_back({{c.x1 + c.x2, 2 * box.y1}, {c.x1 + c.x2, ring.y1}});
    if (c.x2 == box.x2) out.push_back({{2 * box.x2, c.y1 + c.y2}, {ring.x2, c.y1 + c.y2}});
    if (c.y2 == box.y2) out.push_back({{c.x1 + c.x2, 2 * box.y2}, {c.x1 + c.x2, ring.y2}});
    if (c.x1 == box.x1) out.push_back({{2 * box.x1, c.y1 + c.y2}, {ring.x1, c.y1 + c.y2}});
    return out;
}

}  // namespace

SeparatorCycle classify_cycle(const DualGraph& g, const std::vector<int>& cycle) {
    SeparatorCycle sc;
    sc.cycle = cycle;
    int n = g.n(), out = g.outer();
    sc.side.assign(n, Side::exterior);
    for (int v : cycle) sc.side[v] = Side::on_cycle;
    // rotate so the outer vertex, if present, is last
    std::vector<int> cyc = cycle;
    auto it = std::find(cyc.begin(), cyc.end(), out);
    bool through_outer = it != cyc.end();
    if (through_outer) std::rotate(cyc.begin(), it + 1, cyc.end());
    std::vector<P2> poly;
    std::size_t m = cyc.size();
    std::size_t cells_on = through_outer ? m - 1 : m;
    for (std::size_t i = 0; i < cells_on; ++i) {
        const Rect& a = g.cells[cyc[i]];
        poly.push_back(center(a));
        if (i + 1 < cells_on || !through_outer) {
            const Rect& b = g.cells[cyc[(i + 1) % m]];
            poly.push_back(shared_mid(a, b));
        }
    }
    if (through_outer) {
        const Rect& b = g.box;
        Ring ring{2 * b.x1 - 2, 2 * b.y1 - 2, 2 * b.x2 + 2, 2 * b.y2 + 2};
        auto ew = exits(g.cells[cyc[cells_on - 1]], b, ring);
        auto eu = exits(g.cells[cyc[0]], b, ring);
        std::int64_t best = -1;
        std::vector<P2> route;
        std::int64_t per = ring.perimeter();
        for (const auto& [pw, rw] : ew)
            for (const auto& [pu, ru] : eu)
                for (int dir : {1, -1}) {
                    std::int64_t tw = ring.pos(rw), tu = ring.pos(ru);
                    std::int64_t len = dir > 0 ? ((tu - tw) % per + per) % per : ((tw - tu) % per + per) % per;
                    if (best >= 0 && len >= best) continue;
                    best = len;
                    route = {pw, rw};
                    std::vector<std::pair<std::int64_t, int>> cs;
                    for (int k = 0; k < 4; ++k) {
                        std::int64_t d = dir > 0 ? ((ring.corner_pos(k) - tw) % per + per) % per
                                                 : ((tw - ring.corner_pos(k)) % per + per) % per;
                        if (d > 0 && d < len) cs.push_back({d, k});
                    }
                    std::sort(cs.begin(), cs.end());
                    for (auto& c : cs) route.push_back(ring.corner(c.second));
                    route.push_back(ru);
                    route.push_back(pu);
                }
        poly.insert(poly.end(), route.begin(), route.end());
    }
    for (int v = 0; v < out; ++v)
        if (sc.side[v] != Side::on_cycle && inside(poly, center(g.cells[v]))) sc.side[v] = Side::interior;
    for (int v = 0; v < n; ++v) {
        auto w = g.weight[v];
        if (sc.side[v] == Side::interior)
            sc.interior_weight += w;
        else if (sc.side[v] == Side::exterior)
            sc.exterior_weight += w;
        else
            sc.cycle_weight += w;
    }
    return sc;
}

bool is_simple_cycle(const DualGraph& g, const std::vector<int>& cycle) {
    if (cycle.size() < 3) return false;
    std::set<int> seen(cycle.begin(), cycle.end());
    if (seen.size() != cycle.size()) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    return true;
}

bool within_length_bound(const DualGraph& g, std::size_t len) {
    std::int64_t l = static_cast<std::int64_t>(len);
    return l * l <= 8LL * (g.max_face / 2) * g.n();
}

bool is_balanced(const SeparatorCycle& c, std::int64_t total) {
    return 3 * c.interior_weight <= 2 * total && 3 * c.exterior_weight <= 2 * total;
}

bool is_feasible_separator(const DualGraph& g, const SeparatorCycle& c) {
    return is_simple_cycle(g, c.cycle) && within_length_bound(g, c.cycle.size()) && is_balanced(c, g.total_weight());
}

namespace {

std::vector<int> canonical(std::vector<int> c) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    if (c.size() > 2 && c[1] > c.back()) std::reverse(c.begin() + 1, c.end());
    return c;
}

std::size_t max_len(const DualGraph& g) {
    std::size_t l = 0;
    while (within_length_bound(g, l + 1) && l + 1 <= static_cast<std::size_t>(g.n())) ++l;
    return l;
}

}  // namespace

std::vector<std::vector<int>> candidate_cycles(const DualGraph& g, const CycleSearchConfig& cfg) {
    std::set<std::vector<int>> found;
    int n = g.n();
    std::size_t lmax = max_len(g);
    auto add = [&](std::vector<int> c) {
        if (c.size() < 3 || c.size() > lmax) return;
        found.insert(canonical(std::move(c)));
    };
    for (int root = 0; root < n && static_cast<int>(found.size()) < cfg.cycle_cap; ++root) {
        std::vector<int> parent(n, -2), depth(n, 0), queue{root};
        parent[root] = -1;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (int v : g.adj[queue[h]])
                if (parent[v] == -2) {
                    parent[v] = queue[h];
                    depth[v] = depth[queue[h]] + 1;
                    queue.push_back(v);
                }
        for (int u = 0; u < n; ++u)
            for (int v : g.adj[u]) {
                if (v < u || parent[u] == -2 || parent[v] == u || parent[u] == v) continue;
                std::vector<int> pu{u}, pv{v};
                int a = u, b = v;
                while (a != b) {
                    if (depth[a] >= depth[b]) {
                        a = parent[a];
                        pu.push_back(a);
                    } else {
                        b = parent[b];
                        pv.push_back(b);
                    }
                }
                pv.pop_back();
                pu.insert(pu.end(), pv.rbegin(), pv.rend());
                add(std::move(pu));
            }
    }
    if (n <= cfg.exhaustive_limit || found.empty()) {
        std::int64_t steps = 0;
        std::vector<int> path;
        std::vector<char> used(n, 0);
        bool stop = false;
        for (std::size_t d = 3; d <= lmax && !stop; ++d) {
            std::function<void(int)> dfs = [&](int s) {
                if (stop) return;
                if (++steps > cfg.node_cap) {
                    stop = true;
                    return;
                }
                int u = path.back();
                if (path.size() == d) {
                    if (g.has_edge(u, s) && path[1] < path.back()) found.insert(path);
                    if (static_cast<int>(found.size()) >= cfg.cycle_cap * 10) stop = true;
                    return;
                }
                for (int v : g.adj[u]) {
                    if (v <= s || used[v]) continue;
                    used[v] = 1;
                    path.push_back(v);
                    dfs(s);
                    path.pop_back();
                    used[v] = 0;
                }
            };
            for (int s = 0; s < n && !stop; ++s) {
                path = {s};
                used.assign(n, 0);
                used[s] = 1;
                dfs(s);
            }
        }
    }
    std::vector<std::vector<int>> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

SeparatorCycle cycle_separator(const DualGraph& g, const CycleSearchConfig& cfg) {
    if (g.total_weight() <= 0) throw SeparatorFailure("cycle_separator: total weight is zero");
    auto cycles = candidate_cycles(g, cfg);
    std::int64_t total = g.total_weight();
    bool have = false;
    SeparatorCycle best;
    std::tuple<std::int64_t, std::size_t> best_key{};
    for (const auto& c : cycles) {
        auto sc = classify_cycle(g, c);
        if (!is_balanced(sc, total)) continue;
        std::tuple<std::int64_t, std::size_t> key{std::max(sc.interior_weight, sc.exterior_weight), c.size()};
        if (!have || key < best_key) {
            have = true;
            best_key = key;
            best = std::move(sc);
        }
    }
    if (!have)
        throw SeparatorFailure("cycle_separator: no balanced cycle among " + std::to_string(cycles.size()) +
                               " candidates on " + std::to_string(g.n()) + " vertices");
    return best;
}

SplitResult split_from_cycle(const Instance& inst, const FakeSet& f, const IndependentSet& opt,
                             const CellPartition& p, const DualGraph& g, const SeparatorCycle& c, OptOracle& orc) {
    SplitResult res;
    res.cycle = c.cycle;
    res.outer_on_cycle = c.passes_outer(g);
    std::vector<char> in_j(p.cells.size(), 0);
    for (std::size_t k = 0; k < p.cells.size(); ++k) {
        if (c.side[k] == Side::on_cycle) res.a_cells.push_back(static_cast<int>(k));
        if (c.side[k] != Side::exterior) {
            in_j[k] = 1;
            res.j_cells.push_back(static_cast<int>(k));
        }
    }
    std::vector<Coord> xs{p.box.x1, p.box.x2}, ys{p.box.y1, p.box.y2};
    for (const auto& r : p.cells) {
        xs.insert(xs.end(), {r.x1, r.x2});
        ys.insert(ys.end(), {r.y1, r.y2});
    }
    CellRegion j;
    j.xs = sorted_unique(std::move(xs));
    j.ys = sorted_unique(std::move(ys));
    j.inside.assign(static_cast<std::size_t>(j.nx()) * j.ny(), 0);
    auto xi = [&](Coord v) { return static_cast<int>(std::lower_bound(j.xs.begin(), j.xs.end(), v) - j.xs.begin()); };
    auto yi = [&](Coord v) { return static_cast<int>(std::lower_bound(j.ys.begin(), j.ys.end(), v) - j.ys.begin()); };
    for (std::size_t k = 0; k < p.cells.size(); ++k) {
        if (!in_j[k]) continue;
        const auto& r = p.cells[k];
        for (int a = xi(r.x1); a < xi(r.x2); ++a)
            for (int b = yi(r.y1); b < yi(r.y2); ++b) j.at(a, b) = 1;
    }
    CellRegion rest = j;
    for (auto& v : rest.inside) v = !v;
    res.f1.rects = tile_region_best(j);
    res.f2.rects = tile_region_best(rest);
    for (std::size_t k = 0; k < p.cells.size(); ++k) {
        int fi = p.fake_of[k];
        if (fi < 0) continue;
        (in_j[k] ? res.f2 : res.f1).rects.push_back(f.rects[fi]);
    }
    res.f1.provenance = "outside-J";
    res.f2.provenance = "inside-J";
    res.f1 = normalized(compact(res.f1, p.box));
    res.f2 = normalized(compact(res.f2, p.box));
    res.opt1 = orc.value(res.f1);
    res.opt2 = orc.value(res.f2);
    for (int i : opt.indices)
        if (!rect_in_region(inst.rects[i], res.f1, inst.box) && !rect_in_region(inst.rects[i], res.f2, inst.box))
            ++res.lost;
    for (int k : res.a_cells) res.a_np += p.n_p[k];
    res.balance_applies = 12 * res.a_np <= opt.value();
    return res;
}

namespace {

enum class Goal { boundary, balance };

SplitResult search_split(const Instance& inst, const FakeSet& f, const IndependentSet& opt, const CellPartition& p,
                         const DualGraph& g, OptOracle& orc, const SplitConfig& cfg, Goal goal) {
    std::int64_t total = g.total_weight();
    if (total <= 0) throw SeparatorFailure("split: total weight is zero");
    auto cycles = candidate_cycles(g, cfg.search);
    struct Cand {
        std::int64_t heavy;
        std::size_t len;
        SeparatorCycle sc;
    };
    std::vector<Cand> feasible;
    for (const auto& c : cycles) {
        auto sc = classify_cycle(g, c);
        if (!is_balanced(sc, total)) continue;
        // both sides must keep some area of S(F)
        bool in = false, outside = false;
        for (std::size_t k = 0; k < p.cells.size(); ++k) {
            if (p.fake_of[k] >= 0) continue;
            if (sc.side[k] == Side::exterior)
                outside = true;
            else
                in = true;
        }
        if (!in || !outside) continue;
        feasible.push_back({std::max(sc.interior_weight, sc.exterior_weight), c.size(), std::move(sc)});
    }
    if (feasible.empty())
        throw SeparatorFailure("split: no feasible separator among " + std::to_string(cycles.size()) + " cycles on " +
                               std::to_string(g.n()) + " dual vertices");
    std::stable_sort(feasible.begin(), feasible.end(), [&](const Cand& a, const Cand& b) {
        if (goal == Goal::boundary) return std::tie(a.len, a.heavy) < std::tie(b.len, b.heavy);
        return std::tie(a.heavy, a.len) < std::tie(b.heavy, b.len);
    });
    if (static_cast<int>(feasible.size()) > cfg.eval_cap) feasible.resize(cfg.eval_cap);
    int parent_opt = opt.value();
    bool have = false;
    SplitResult best;
    std::tuple<int, int, int, std::size_t> best_key{};
    int evaluated = 0;
    for (const auto& cand : feasible) {
        auto res = split_from_cycle(inst, f, opt, p, g, cand.sc, orc);
        if (!is_decomposition_pair(f, res.f1, res.f2, inst.box)) continue;
        ++evaluated;
        int viol = goal == Goal::balance && 4 * std::max(res.opt1, res.opt2) > 3 * parent_opt ? 1 : 0;
        std::tuple<int, int, int, std::size_t> key{viol, std::max(res.f1.size(), res.f2.size()),
                                                   -(res.opt1 + res.opt2), cand.len};
        if (!have || key < best_key) {
            have = true;
            best_key = key;
            best = std::move(res);
        }
    }
    if (!have) throw SeparatorFailure("split: no candidate produced a valid decomposition pair");
    best.candidates = evaluated;
    return best;
}

void require_cells(const CellPartition& p, const FakeSet& f) {
    for (int k = 0; k < f.size(); ++k)
        if (std::find(p.fake_of.begin(), p.fake_of.end(), k) == p.fake_of.end())
            throw std::invalid_argument("split: fake rectangle is not a cell of the partition");
}

}  // namespace

SplitResult split_reduce_boundary(const Instance& inst, const FakeSet& f, const IndependentSet& opt,
                                  const CellPartition& p, OptOracle& orc, const SplitConfig& cfg) {
    int l = f.size();
    if (cfg.strict && (l <= 3 || p.r < l || 2LL * p.r > opt.value()))
        throw std::invalid_argument("split_reduce_boundary: needs |F| > 3 and |F| <= r <= |OPT'|/2");
    if (l < 1) throw std::invalid_argument("split_reduce_boundary: no fake rectangles to balance");
    require_cells(p, f);
    auto g = build_dual(p);
    for (std::size_t k = 0; k < p.cells.size(); ++k) g.weight[k] = p.fake_of[k] >= 0 ? 1 : 0;
    return search_split(inst, f, opt, p, g, orc, cfg, Goal::boundary);
}

std::vector<std::int64_t> upper_left_weights(const CellPartition& p, const Instance& inst, const IndependentSet& opt) {
    std::vector<std::int64_t> w(p.cells.size(), 0);
    for (int i : opt.indices) {
        Coord x = inst.rects[i].x1, y = inst.rects[i].y2;
        for (std::size_t k = 0; k < p.cells.size(); ++k) {
            const auto& c = p.cells[k];
            if (c.x1 <= x && x < c.x2 && c.y1 < y && y <= c.y2) {
                if (p.fake_of[k] < 0) ++w[k];
                break;
            }
        }
    }
    return w;
}

SplitResult split_balanced(const Instance& inst, const FakeSet& f, const IndependentSet& opt, const CellPartition& p,
                           OptOracle& orc, const SplitConfig& cfg) {
    if (cfg.strict &&
        (p.r < std::max<std::int64_t>(f.size(), (1LL << 24) * cfg.partition.c_star) || 2LL * p.r > opt.value()))
        throw std::invalid_argument("split_balanced: needs max(L, 2^24 c*) <= r <= |OPT'|/2");
    if (opt.value() < 1) throw std::invalid_argument("split_balanced: empty optimum");
    require_cells(p, f);
    auto g = build_dual(p);
    auto w = upper_left_weights(p, inst, opt);
    for (std::size_t k = 0; k < w.size(); ++k) g.weight[k] = w[k];
    return search_split(inst, f, opt, p, g, orc, cfg, Goal::balance);
}

int split_r(int l_star, int l, int k, const SplitConfig& cfg) {
    double base = l_star / (k * (cfg.c1 + cfg.c2));
    int r = static_cast<int>(std::floor(base * base));
    if (!cfg.strict) r = std::max({r, l, 3});
    return r;
}

namespace {

constexpr int kSplitAttempts = 8;
constexpr int kPairDraws = 4;

using PartitionMaker = std::function<CellPartition(const FakeSet&, const IndependentSet&, std::uint64_t)>;

template <class Split>
SplitResult with_retries(const char* tag, std::uint64_t seed, const FakeSet& f, const IndependentSet& opt,
                         const PartitionMaker& make, Split split) {
    std::string last;
    for (int a = 0; a < kSplitAttempts; ++a) {
        try {
            auto p = make(f, opt, derive_seed(seed, tag, a));
            return split(p);
        } catch (const SeparatorFailure& e) {
            last = e.what();
        } catch (const PartitionFailure& e) {
            last = e.what();
        }
    }
    throw DecompositionFailure(std::string(tag) + ": " + last);
}

TripleResult triple_impl(const Instance& inst, const FakeSet& f, int l_star, int k, std::uint64_t seed,
                         OptOracle& orc, const SplitConfig& cfg, const PartitionMaker& make, const char* who) {
    int l = f.size();
    if (l > l_star) throw std::invalid_argument(std::string(who) + ": |F| exceeds L*");
    TripleResult out;
    auto opt = orc.solve(f);
    out.opt = opt.value();
    if (cfg.strict) {
        double c = k == 3 ? cfg.c3 : cfg.c_tilde;
        std::int64_t need = (k == 3 ? 64LL : 512LL) * l_star * l_star;
        if (l_star <= c || out.opt < need)
            throw DecompositionFailure(std::string(who) + ": thresholds unmeetable at this scale (OPT=" +
                                       std::to_string(out.opt) + ", need " + std::to_string(need) + ")");
    }
    if (out.opt < 1) throw DecompositionFailure(std::string(who) + ": empty sub-instance");
    out.r = split_r(l_star, l, k, cfg);
    FakeSet f1p, f2p;
    if (l <= 3) {
        out.shortcut = true;
        f1p = f;
        f2p = FakeSet::whole(inst.box);
    } else {
        auto s = with_retries(
            "triple-boundary", seed, f, opt, make,
            [&](const CellPartition& p) { return split_reduce_boundary(inst, f, opt, p, orc, cfg); });
        f1p = s.f1;
        f2p = s.f2;
        if (s.opt1 < s.opt2) std::swap(f1p, f2p);
    }
    auto opt2 = orc.solve(f1p);
    if (opt2.value() < 1) throw DecompositionFailure(std::string(who) + ": larger side is empty");
    auto s2 = with_retries("triple-balance", seed, f1p, opt2, make,
                           [&](const CellPartition& p) { return split_balanced(inst, f1p, opt2, p, orc, cfg); });
    out.f1 = s2.f1;
    out.f2 = s2.f2;
    out.f3 = f2p;
    out.opt1 = s2.opt1;
    out.opt2 = s2.opt2;
    out.opt3 = orc.value(f2p);
    out.balance_applies = s2.balance_applies;
    return out;
}

}  // namespace

TripleResult decompose_triple(const Instance& inst, const FakeSet& f, int l_star, std::uint64_t seed, OptOracle& orc,
                              const SplitConfig& cfg) {
    int l = f.size();
    int r = split_r(l_star, l, 3, cfg);
    PartitionMaker make = [&](const FakeSet& ff, const IndependentSet& o, std::uint64_t s) {
        return build_r_good_partition(inst, ff, o, r, s, cfg.partition);
    };
    return triple_impl(inst, f, l_star, 3, seed, orc, cfg, make, "decompose_triple");
}

TripleResult decompose_triple_grid(const Instance& inst, const FakeSet& f, int l_star, const Grid& g,
                                   std::uint64_t seed, OptOracle& orc, const SplitConfig& cfg) {
    int l = f.size();
    int r = split_r(l_star, l, 12, cfg);
    PartitionMaker make = [&](const FakeSet& ff, const IndependentSet& o, std::uint64_t s) {
        return build_grid_aligned_r_good(inst, ff, o, r, g, s, cfg.partition);
    };
    return triple_impl(inst, f, l_star, 12, seed, orc, cfg, make, "decompose_triple_grid");
}

PairResult decompose_pair_grid(const Instance& inst, const FakeSet& f, const Grid& g, std::uint64_t seed,
                               OptOracle& orc, const SplitConfig& cfg) {
    int l = f.size();
    PairResult out;
    auto opt = orc.solve(f);
    out.opt = opt.value();
    if (cfg.strict && (l <= cfg.c_tilde || out.opt < 512LL * l * l))
        throw DecompositionFailure("decompose_pair_grid: thresholds unmeetable at this scale");
    if (l < 1) throw std::invalid_argument("decompose_pair_grid: no fake rectangles");
    out.r = split_r(l, l, 12, cfg);
    PartitionMaker make = [&](const FakeSet& ff, const IndependentSet& o, std::uint64_t s) {
        return build_grid_aligned_r_good(inst, ff, o, out.r, g, s, cfg.partition);
    };
    // independent partitions give different separators; keep the smallest boundary
    SplitResult s;
    bool have = false;
    for (int a = 0; a < kPairDraws; ++a) {
        auto c = with_retries("pair-grid", derive_seed(seed, "pair-draw", a), f, opt, make,
                              [&](const CellPartition& p) { return split_reduce_boundary(inst, f, opt, p, orc, cfg); });
        auto key = [](const SplitResult& x) { return std::make_pair(std::max(x.f1.size(), x.f2.size()), x.lost); };
        if (!have || key(c) < key(s)) s = std::move(c);
        have = true;
    }
    out.f1 = s.f1;
    out.f2 = s.f2;
    out.opt1 = s.opt1;
    out.opt2 = s.opt2;
    return out;
}

}  // namespace misr
