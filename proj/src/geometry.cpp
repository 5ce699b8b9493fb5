#include "misr/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace misr {

bool intersects(const Rect& a, const Rect& b) {
    if (a.closed && b.closed)
        return a.x1 <= b.x2 && b.x1 <= a.x2 && a.y1 <= b.y2 && b.y1 <= a.y2;
    return interiors_overlap(a, b);
}

std::vector<Coord> sorted_unique(std::vector<Coord> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

AlignmentPointSet AlignmentPointSet::from_points(const std::vector<Point>& pts) {
    AlignmentPointSet z;
    for (const auto& p : pts) z.add_point(p);
    z.normalize();
    return z;
}

AlignmentPointSet AlignmentPointSet::from_rects(const std::vector<Rect>& rs) {
    AlignmentPointSet z;
    for (const auto& r : rs) z.add_rect(r);
    z.normalize();
    return z;
}

void AlignmentPointSet::add_rect(const Rect& r) {
    xs.push_back(r.x1);
    xs.push_back(r.x2);
    ys.push_back(r.y1);
    ys.push_back(r.y2);
}

void AlignmentPointSet::add_point(const Point& p) {
    xs.push_back(p.x);
    ys.push_back(p.y);
}

void AlignmentPointSet::normalize() {
    xs = sorted_unique(std::move(xs));
    ys = sorted_unique(std::move(ys));
}

bool AlignmentPointSet::has_x(Coord x) const { return std::binary_search(xs.begin(), xs.end(), x); }
bool AlignmentPointSet::has_y(Coord y) const { return std::binary_search(ys.begin(), ys.end(), y); }

bool is_aligned(const Rect& r, const AlignmentPointSet& z) {
    return z.has_x(r.x1) && z.has_x(r.x2) && z.has_y(r.y1) && z.has_y(r.y2);
}

bool is_aligned(const RectilinearPolygon& p, const AlignmentPointSet& z) {
    for (const auto& c : p.corners)
        if (!z.has_x(c.x) || !z.has_y(c.y)) return false;
    return true;
}

Coord signed_area2(const RectilinearPolygon& p) {
    Coord s = 0;
    int n = p.size();
    for (int i = 0; i < n; ++i) {
        const auto& a = p.corners[i];
        const auto& b = p.corners[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    return s;
}

namespace {

struct Seg {
    Point a, b;  // normalized so a <= b
    bool horizontal;
};

Seg make_seg(Point a, Point b) {
    if (b < a) std::swap(a, b);
    return {a, b, a.y == b.y};
}

bool segs_touch(const Seg& s, const Seg& t) {
    if (s.horizontal == t.horizontal) {
        if (s.horizontal) return s.a.y == t.a.y && s.a.x <= t.b.x && t.a.x <= s.b.x;
        return s.a.x == t.a.x && s.a.y <= t.b.y && t.a.y <= s.b.y;
    }
    const Seg& h = s.horizontal ? s : t;
    const Seg& v = s.horizontal ? t : s;
    return h.a.x <= v.a.x && v.a.x <= h.b.x && v.a.y <= h.a.y && h.a.y <= v.b.y;
}

}  // namespace

std::string polygon_defect(const RectilinearPolygon& p) {
    int n = p.size();
    if (n < 4) return "fewer than 4 corners";
    if (n % 2 != 0) return "odd corner count";
    std::vector<Seg> segs;
    for (int i = 0; i < n; ++i) {
        Point a = p.corners[i], b = p.corners[(i + 1) % n];
        if (a == b) return "repeated corner";
        if (a.x != b.x && a.y != b.y) return "edge not axis-parallel";
        segs.push_back(make_seg(a, b));
    }
    for (int i = 0; i < n; ++i)
        if (segs[i].horizontal == segs[(i + 1) % n].horizontal) return "edges do not alternate";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segs_touch(segs[i], segs[j])) return "boundary not simple";
        }
    return {};
}

Coord CellRegion::area() const {
    Coord a = 0;
    for (int i = 0; i < nx(); ++i)
        for (int j = 0; j < ny(); ++j)
            if (at(i, j)) a += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
    return a;
}

bool CellRegion::empty() const {
    return std::none_of(inside.begin(), inside.end(), [](char c) { return c != 0; });
}

std::vector<Rect> tile_region(const CellRegion& reg, Sweep sweep) {
    std::vector<Rect> out;
    int nx = reg.nx(), ny = reg.ny();
    if (nx <= 0 || ny <= 0) return out;
    bool vert = sweep == Sweep::vertical;
    int outer = vert ? nx : ny;
    int inner = vert ? ny : nx;
    auto cell = [&](int o, int k) { return vert ? reg.at(o, k) : reg.at(k, o); };
    const auto& ocoord = vert ? reg.xs : reg.ys;
    const auto& icoord = vert ? reg.ys : reg.xs;
    // open pieces keyed by their run [k0, k1) along the inner axis
    std::map<std::pair<int, int>, int> open;  // run -> start slab
    auto emit = [&](int o0, int o1, int k0, int k1) {
        if (vert)
            out.push_back(closed_rect(ocoord[o0], icoord[k0], ocoord[o1], icoord[k1]));
        else
            out.push_back(closed_rect(icoord[k0], ocoord[o0], icoord[k1], ocoord[o1]));
    };
    for (int o = 0; o <= outer; ++o) {
        std::map<std::pair<int, int>, int> next;
        if (o < outer) {
            int k = 0;
            while (k < inner) {
                if (!cell(o, k)) {
                    ++k;
                    continue;
                }
                int k0 = k;
                while (k < inner && cell(o, k)) ++k;
                auto run = std::make_pair(k0, k);
                auto it = open.find(run);
                if (it != open.end()) {
                    next[run] = it->second;
                    open.erase(it);
                } else {
                    next[run] = o;
                }
            }
        }
        for (const auto& [run, start] : open) emit(start, o, run.first, run.second);
        open = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rect> tile_region_best(const CellRegion& reg) {
    auto v = tile_region(reg, Sweep::vertical);
    auto h = tile_region(reg, Sweep::horizontal);
    return h.size() < v.size() ? h : v;
}

CellRegion rasterize_polygon(const RectilinearPolygon& p, std::vector<Coord> xs, std::vector<Coord> ys) {
    CellRegion reg;
    reg.xs = sorted_unique(std::move(xs));
    reg.ys = sorted_unique(std::move(ys));
    int nx = reg.nx(), ny = reg.ny();
    reg.inside.assign(static_cast<std::size_t>(std::max(nx, 0)) * std::max(ny, 0), 0);
    int n = p.size();
    for (int j = 0; j < ny; ++j) {
        Coord cy2 = reg.ys[j] + reg.ys[j + 1];  // doubled center y
        std::vector<Coord> cross;               // doubled x of crossing vertical edges
        for (int e = 0; e < n; ++e) {
            Point a = p.corners[e], b = p.corners[(e + 1) % n];
            if (a.x != b.x) continue;
            Coord lo = 2 * std::min(a.y, b.y), hi = 2 * std::max(a.y, b.y);
            if (lo < cy2 && cy2 < hi) cross.push_back(2 * a.x);
        }
        std::sort(cross.begin(), cross.end());
        for (int i = 0; i < nx; ++i) {
            Coord cx2 = reg.xs[i] + reg.xs[i + 1];
            auto cnt = std::upper_bound(cross.begin(), cross.end(), cx2) - cross.begin();
            reg.at(i, j) = (cnt % 2) == 1;
        }
    }
    return reg;
}

namespace {

void polygon_lines(const RectilinearPolygon& p, std::vector<Coord>& xs, std::vector<Coord>& ys) {
    for (const auto& c : p.corners) {
        xs.push_back(c.x);
        ys.push_back(c.y);
    }
}

}  // namespace

std::vector<Rect> tile_polygon(const RectilinearPolygon& p) {
    if (auto d = polygon_defect(p); !d.empty()) throw std::invalid_argument("tile_polygon: " + d);
    std::vector<Coord> xs, ys;
    polygon_lines(p, xs, ys);
    return tile_region(rasterize_polygon(p, xs, ys), Sweep::vertical);
}

std::vector<Rect> tile_complement(const RectilinearPolygon& p, const Rect& b) {
    if (auto d = polygon_defect(p); !d.empty()) throw std::invalid_argument("tile_complement: " + d);
    for (const auto& c : p.corners)
        if (c.x < b.x1 || c.x > b.x2 || c.y < b.y1 || c.y > b.y2)
            throw std::invalid_argument("tile_complement: polygon not inside box");
    std::vector<Coord> xs{b.x1, b.x2}, ys{b.y1, b.y2};
    polygon_lines(p, xs, ys);
    auto reg = rasterize_polygon(p, xs, ys);
    for (auto& c : reg.inside) c = !c;
    return tile_region(reg, Sweep::vertical);
}

RectilinearPolygon polyomino_boundary(const std::vector<Point>& cells) {
    std::set<Point> cs(cells.begin(), cells.end());
    // counter-clockwise unit edges of every cell, interior edges cancel
    std::map<std::pair<Point, Point>, int> edges;
    auto add = [&](Point a, Point b) {
        auto rev = std::make_pair(b, a);
        if (auto it = edges.find(rev); it != edges.end())
            edges.erase(it);
        else
            edges[{a, b}] = 1;
    };
    for (const auto& c : cs) {
        Point p0{c.x, c.y}, p1{c.x + 1, c.y}, p2{c.x + 1, c.y + 1}, p3{c.x, c.y + 1};
        add(p0, p1);
        add(p1, p2);
        add(p2, p3);
        add(p3, p0);
    }
    if (edges.empty()) return {};
    std::map<Point, Point> succ;
    for (const auto& [e, _] : edges) {
        if (succ.count(e.first)) return {};  // pinch vertex
        succ[e.first] = e.second;
    }
    Point start = succ.begin()->first;
    std::vector<Point> walk;
    Point cur = start;
    do {
        walk.push_back(cur);
        cur = succ[cur];
    } while (cur != start && walk.size() <= edges.size());
    if (walk.size() != edges.size()) return {};  // holes give extra cycles
    RectilinearPolygon poly;
    int m = static_cast<int>(walk.size());
    for (int i = 0; i < m; ++i) {
        Point a = walk[(i + m - 1) % m], b = walk[i], c = walk[(i + 1) % m];
        bool straight = (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y);
        if (!straight) poly.corners.push_back(b);
    }
    return poly;
}

RectilinearPolygon random_rectilinear_polygon(Rng& rng, int max_corners, int grid) {
    if (max_corners < 4) throw std::invalid_argument("random_rectilinear_polygon: max_corners < 4");
    std::vector<Point> cells{{rng.uniform(0, grid - 1), rng.uniform(0, grid - 1)}};
    RectilinearPolygon best = polyomino_boundary(cells);
    int target = static_cast<int>(rng.uniform(1, static_cast<std::int64_t>(grid) * grid / 2));
    for (int attempt = 0; attempt < 40 * target && static_cast<int>(cells.size()) < target; ++attempt) {
        const auto& base = cells[rng.uniform(0, static_cast<std::int64_t>(cells.size()) - 1)];
        static const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        int d = static_cast<int>(rng.uniform(0, 3));
        Point c{base.x + dx[d], base.y + dy[d]};
        if (c.x < 0 || c.y < 0 || c.x >= grid || c.y >= grid) continue;
        if (std::find(cells.begin(), cells.end(), c) != cells.end()) continue;
        cells.push_back(c);
        auto poly = polyomino_boundary(cells);
        if (poly.corners.empty() || poly.size() > max_corners) {
            cells.pop_back();
            continue;
        }
        best = std::move(poly);
    }
    // stretch the unit lattice by random positive gaps
    std::vector<Coord> mx(grid + 1), my(grid + 1);
    mx[0] = rng.uniform(0, 3);
    my[0] = rng.uniform(0, 3);
    for (int i = 1; i <= grid; ++i) {
        mx[i] = mx[i - 1] + rng.uniform(1, 4);
        my[i] = my[i - 1] + rng.uniform(1, 4);
    }
    for (auto& c : best.corners) c = {mx[c.x], my[c.y]};
    return best;
}

}  // namespace misr
