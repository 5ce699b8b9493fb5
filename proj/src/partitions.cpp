#include "misr/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace misr {

int count_meeting(const Rect& cell, const Instance& inst, const std::vector<int>& opt) {
    int c = 0;
    for (int i : opt)
        if (interiors_overlap(cell, inst.rects[i])) ++c;
    return c;
}

namespace {

int fake_index(const Rect& cell, const FakeSet& f) {
    for (int k = 0; k < f.size(); ++k)
        if (f.rects[k].same_box(cell)) return k;
    return -1;
}

int excess_of(int n_p, int r, int opt_size) {
    if (opt_size <= 0) return 0;
    return static_cast<int>((static_cast<std::int64_t>(r) * n_p) / opt_size);
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void fill_stats(CellPartition& p, const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r) {
    p.r = r;
    p.opt_size = opt.value();
    p.fake_of.assign(p.cells.size(), -1);
    p.n_p.assign(p.cells.size(), 0);
    p.excess.assign(p.cells.size(), 0);
    for (std::size_t k = 0; k < p.cells.size(); ++k) {
        p.fake_of[k] = fake_index(p.cells[k], f);
        p.n_p[k] = count_meeting(p.cells[k], inst, opt.indices);
        if (p.fake_of[k] < 0) p.excess[k] = excess_of(p.n_p[k], r, p.opt_size);
    }
}

bool tiles_box(const std::vector<Rect>& cells, const Rect& box) {
    Coord total = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cells[i].valid() || !box.contains(cells[i])) return false;
        total += cells[i].area();
        for (std::size_t j = i + 1; j < cells.size(); ++j)
            if (interiors_overlap(cells[i], cells[j])) return false;
    }
    return total == box.area();
}

GoodReport check_r_good(const CellPartition& p, const Instance& inst, const FakeSet& f, const IndependentSet& opt,
                        int r, int c_star) {
    GoodReport rep;
    std::ostringstream why;
    rep.tiles = tiles_box(p.cells, p.box) && p.box.same_box(inst.box);
    if (!rep.tiles) why << "cells do not tile the box; ";
    rep.np_bound = true;
    int worst = 0;
    for (const auto& c : p.cells) {
        int np = count_meeting(c, inst, opt.indices);
        worst = std::max(worst, np);
        if (static_cast<std::int64_t>(np) * r > 20LL * opt.value()) rep.np_bound = false;
    }
    if (!rep.np_bound) why << "cell meets " << worst << " > 20*" << opt.value() << "/" << r << "; ";
    rep.fakes_are_cells = true;
    for (const auto& q : f.rects) {
        bool found = std::any_of(p.cells.begin(), p.cells.end(), [&](const Rect& c) { return c.same_box(q); });
        if (!found) rep.fakes_are_cells = false;
    }
    if (!rep.fakes_are_cells) why << "a fake rectangle is not a cell; ";
    rep.count_bound = static_cast<std::int64_t>(p.cells.size()) <= static_cast<std::int64_t>(c_star) * r;
    if (!rep.count_bound) why << p.cells.size() << " cells > " << c_star << "*" << r << "; ";
    CellPartition fresh = p;
    fill_stats(fresh, inst, f, opt, r);
    rep.stats_match = fresh.n_p == p.n_p && fresh.excess == p.excess && fresh.fake_of == p.fake_of;
    if (!rep.stats_match) why << "stored stats differ from recount; ";
    rep.detail = why.str();
    return rep;
}

std::vector<Rect> ray_partition(const Rect& box, const std::vector<Rect>& x, int* nonrect_faces) {
    struct VSeg {
        Coord x, lo, hi;
    };
    struct HSeg {
        Coord y, lo, hi;
    };
    std::vector<VSeg> vs{{box.x1, box.y1, box.y2}, {box.x2, box.y1, box.y2}};
    std::vector<HSeg> hs{{box.y1, box.x1, box.x2}, {box.y2, box.x1, box.x2}};
    std::vector<Coord> xs{box.x1, box.x2}, ys{box.y1, box.y2};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rect& r = x[i];
        vs.push_back({r.x1, r.y1, r.y2});
        vs.push_back({r.x2, r.y1, r.y2});
        hs.push_back({r.y1, r.x1, r.x2});
        hs.push_back({r.y2, r.x1, r.x2});
        xs.insert(xs.end(), {r.x1, r.x2});
        ys.insert(ys.end(), {r.y1, r.y2});
        for (Coord cx : {r.x1, r.x2}) {
            Coord up = box.y2, down = box.y1;
            for (std::size_t k = 0; k < x.size(); ++k) {
                if (k == i) continue;
                const Rect& q = x[k];
                if (q.x1 > cx || cx > q.x2) continue;
                if (q.y1 >= r.y2) up = std::min(up, q.y1);
                if (q.y2 <= r.y1) down = std::max(down, q.y2);
            }
            if (up > r.y2) vs.push_back({cx, r.y2, up});
            if (down < r.y1) vs.push_back({cx, down, r.y1});
        }
    }
    xs = sorted_unique(std::move(xs));
    ys = sorted_unique(std::move(ys));
    int nx = static_cast<int>(xs.size()) - 1, ny = static_cast<int>(ys.size()) - 1;
    auto xi = [&](Coord v) { return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()); };
    auto yi = [&](Coord v) { return static_cast<int>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin()); };
    // vwall[i*ny + j]: wall on line xs[i] across y-cell j
    std::vector<char> vwall(static_cast<std::size_t>(nx + 1) * ny, 0), hwall(static_cast<std::size_t>(ny + 1) * nx, 0);
    for (const auto& s : vs)
        for (int j = yi(s.lo); j < yi(s.hi); ++j) vwall[static_cast<std::size_t>(xi(s.x)) * ny + j] = 1;
    for (const auto& s : hs)
        for (int i = xi(s.lo); i < xi(s.hi); ++i) hwall[static_cast<std::size_t>(yi(s.y)) * nx + i] = 1;
    Dsu dsu(nx * ny);
    auto id = [&](int i, int j) { return i * ny + j; };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            if (i + 1 < nx && !vwall[static_cast<std::size_t>(i + 1) * ny + j]) dsu.unite(id(i, j), id(i + 1, j));
            if (j + 1 < ny && !hwall[static_cast<std::size_t>(j + 1) * nx + i]) dsu.unite(id(i, j), id(i, j + 1));
        }
    std::vector<std::vector<int>> faces(nx * ny);
    for (int c = 0; c < nx * ny; ++c) faces[dsu.find(c)].push_back(c);
    std::vector<Rect> out;
    int nonrect = 0;
    for (const auto& face : faces) {
        if (face.empty()) continue;
        int i0 = nx, i1 = -1, j0 = ny, j1 = -1;
        Coord area = 0;
        for (int c : face) {
            int i = c / ny, j = c % ny;
            i0 = std::min(i0, i);
            i1 = std::max(i1, i);
            j0 = std::min(j0, j);
            j1 = std::max(j1, j);
            area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
        }
        Rect bb = closed_rect(xs[i0], ys[j0], xs[i1 + 1], ys[j1 + 1]);
        if (bb.area() == area) {
            out.push_back(bb);
            continue;
        }
        ++nonrect;
        CellRegion reg;
        reg.xs = xs;
        reg.ys = ys;
        reg.inside.assign(static_cast<std::size_t>(nx) * ny, 0);
        for (int c : face) reg.inside[c] = 1;
        for (const auto& t : tile_region(reg)) out.push_back(t);
    }
    if (nonrect_faces) *nonrect_faces = nonrect;
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rect> subdivide_excess_cell(const Rect& cell, const Instance& inst, const IndependentSet& opt, int r,
                                        int t) {
    (void)r;
    std::vector<Coord> x2s, y2s;
    for (int i : opt.indices)
        if (interiors_overlap(cell, inst.rects[i])) {
            x2s.push_back(inst.rects[i].x2);
            y2s.push_back(inst.rects[i].y2);
        }
    auto lines = [&](std::vector<Coord> ends, Coord lo, Coord hi) {
        std::sort(ends.begin(), ends.end());
        std::int64_t n = static_cast<std::int64_t>(ends.size());
        std::vector<Coord> out{lo, hi};
        for (int i = 1; i < t; ++i) {
            // leftmost line with at least i*N/t rectangles completely to its left
            std::int64_t k = (static_cast<std::int64_t>(i) * n + t - 1) / t;
            if (k <= 0) continue;
            Coord v = ends[static_cast<std::size_t>(k - 1)];
            out.push_back(std::clamp(v, lo, hi));
        }
        return sorted_unique(std::move(out));
    };
    auto vx = lines(x2s, cell.x1, cell.x2);
    auto hy = lines(y2s, cell.y1, cell.y2);
    std::vector<Rect> out;
    for (std::size_t a = 0; a + 1 < vx.size(); ++a)
        for (std::size_t b = 0; b + 1 < hy.size(); ++b) out.push_back(closed_rect(vx[a], hy[b], vx[a + 1], hy[b + 1]));
    return out;
}

namespace {

void check_r_range(const FakeSet& f, const IndependentSet& opt, int r, int denom, const PartitionConfig& cfg,
                   const char* who) {
    if (r < 1) throw std::invalid_argument(std::string(who) + ": r must be positive");
    if (!cfg.strict) return;
    if (r < std::max(f.size(), 3) || static_cast<std::int64_t>(r) * denom > opt.value())
        throw std::invalid_argument(std::string(who) + ": r outside [max(|F|,3), |OPT'|/" + std::to_string(denom) + "]");
}

bool one_attempt(const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r, std::uint64_t seed,
                 const PartitionConfig& cfg, CellPartition& out) {
    Rng rng(seed);
    std::vector<char> in_w(inst.n(), 0);
    int m = opt.value();
    for (int pass = 0; pass < 2; ++pass)
        for (int i : opt.indices)
            if (rng.bernoulli(r, m)) in_w[i] = 1;
    std::vector<Rect> w;
    for (const auto& q : f.rects) w.push_back(closed_rect(q.x1, q.y1, q.x2, q.y2));
    int sampled = 0;
    for (int i : opt.indices)
        if (in_w[i]) {
            const auto& q = inst.rects[i];
            w.push_back(closed_rect(q.x1, q.y1, q.x2, q.y2));
            ++sampled;
        }
    CellPartition p;
    p.box = inst.box;
    p.seed = seed;
    p.sampled = sampled + f.size();
    p.cells = ray_partition(inst.box, w);
    fill_stats(p, inst, f, opt, r);
    p.initial_cells = p.size();
    for (std::size_t k = 0; k < p.cells.size(); ++k)
        if (p.fake_of[k] < 0) p.initial_excess.push_back(p.excess[k]);
    std::vector<Rect> cells;
    for (std::size_t k = 0; k < p.cells.size(); ++k) {
        if (p.fake_of[k] < 0 && p.excess[k] >= cfg.excess_threshold) {
            auto parts = subdivide_excess_cell(p.cells[k], inst, opt, r, p.excess[k]);
            cells.insert(cells.end(), parts.begin(), parts.end());
            ++p.subdivided_cells;
        } else {
            cells.push_back(p.cells[k]);
        }
    }
    std::sort(cells.begin(), cells.end());
    p.cells = std::move(cells);
    fill_stats(p, inst, f, opt, r);
    out = std::move(p);
    return check_r_good(out, inst, f, opt, r, cfg.c_star).ok();
}

}  // namespace

CellPartition build_r_good_partition(const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r,
                                     std::uint64_t seed, const PartitionConfig& cfg) {
    check_r_range(f, opt, r, 2, cfg, "build_r_good_partition");
    if (!is_valid_fake_set(f, inst.box)) throw std::invalid_argument("build_r_good_partition: invalid fake set");
    // every OPT' rectangle meets some cell, so N_P <= 20|OPT'|/r needs r <= 20|OPT'|
    if (opt.value() > 0 && r > 20 * opt.value())
        throw PartitionFailure("build_r_good_partition: r = " + std::to_string(r) + " exceeds 20|OPT'| = " +
                               std::to_string(20 * opt.value()));
    int lo = 1 << 30, hi = 0;
    for (int a = 0; a < cfg.retries; ++a) {
        CellPartition p;
        bool ok = one_attempt(inst, f, opt, r, derive_seed(seed, "r-good", a), cfg, p);
        p.attempts = a + 1;
        if (ok) return p;
        lo = std::min(lo, p.size());
        hi = std::max(hi, p.size());
    }
    throw PartitionFailure("build_r_good_partition: " + std::to_string(cfg.retries) +
                           " attempts failed, cell counts " + std::to_string(lo) + ".." + std::to_string(hi));
}

namespace {

// Splits every cell that is not inside a strip along the leftmost and
// rightmost grid lines meeting it.
std::vector<Rect> split_at_extremes(const std::vector<Rect>& cells, const Grid& g, bool vertical) {
    const auto& lines = vertical ? g.vlines : g.hlines;
    std::vector<Rect> out;
    for (const auto& c : cells) {
        Coord lo = vertical ? c.x1 : c.y1, hi = vertical ? c.x2 : c.y2;
        int strip = vertical ? g.vstrip_of(lo, hi) : g.hstrip_of(lo, hi);
        if (strip >= 0) {
            out.push_back(c);
            continue;
        }
        auto a = std::lower_bound(lines.begin(), lines.end(), lo);
        auto b = std::upper_bound(lines.begin(), lines.end(), hi);
        std::vector<Coord> cuts = sorted_unique({lo, *a, *(b - 1), hi});
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            Rect piece = c;
            if (vertical) {
                piece.x1 = cuts[k];
                piece.x2 = cuts[k + 1];
            } else {
                piece.y1 = cuts[k];
                piece.y2 = cuts[k + 1];
            }
            out.push_back(piece);
        }
    }
    return out;
}

bool corner_in(const Rect& p, const Rect& c) {
    for (Coord x : {p.x1, p.x2})
        for (Coord y : {p.y1, p.y2})
            if (c.x1 <= x && x <= c.x2 && c.y1 <= y && y <= c.y2) return true;
    return false;
}

bool aligned_attempt(const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r, const Grid& g,
                     std::uint64_t seed, const PartitionConfig& cfg, CellPartition& out, AlignedStats& st,
                     std::string& why) {
    PartitionConfig inner = cfg;
    inner.strict = false;
    inner.retries = 1;
    CellPartition base;
    int rp = 8 * r;
    if (!one_attempt(inst, f, opt, rp, seed, inner, base)) {
        out = base;
        why = "base partition failed";
        return false;
    }
    st.base_cells = base.size();
    auto cells = split_at_extremes(base.cells, g, true);
    cells = split_at_extremes(cells, g, false);
    st.split_cells = static_cast<int>(cells.size());
    int gx = static_cast<int>(g.vlines.size()) - 1, gy = static_cast<int>(g.hlines.size()) - 1;
    std::vector<char> mark(static_cast<std::size_t>(gx) * gy, 0);
    auto gcell = [&](int a, int b) { return closed_rect(g.vlines[a], g.hlines[b], g.vlines[a + 1], g.hlines[b + 1]); };
    std::vector<Rect> result;
    std::vector<char> small(cells.size(), 0);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& c = cells[k];
        bool fake = fake_index(c, f) >= 0;
        bool in_strip = g.vstrip_of(c.x1, c.x2) >= 0 || g.hstrip_of(c.y1, c.y2) >= 0;
        if (!fake && in_strip) {
            small[k] = 1;
            continue;
        }
        result.push_back(c);
        ++st.large;
        for (int a = 0; a < gx; ++a)
            for (int b = 0; b < gy; ++b)
                if (c.contains(gcell(a, b))) mark[static_cast<std::size_t>(a) * gy + b] = 1;
    }
    for (int a = 0; a < gx; ++a)
        for (int b = 0; b < gy; ++b) {
            auto& m = mark[static_cast<std::size_t>(a) * gy + b];
            if (m) continue;
            Rect gc = gcell(a, b);
            for (const auto& c : cells)
                if (corner_in(c, gc)) {
                    m = 1;
                    result.push_back(gc);
                    ++st.neutral;
                    break;
                }
        }
    // remaining grid cells are crossed by small cells only
    std::vector<char> vertical(static_cast<std::size_t>(gx) * gy, 0);
    for (int a = 0; a < gx; ++a)
        for (int b = 0; b < gy; ++b) {
            if (mark[static_cast<std::size_t>(a) * gy + b]) continue;
            Rect gc = gcell(a, b);
            for (std::size_t k = 0; k < cells.size(); ++k)
                if (small[k] && interiors_overlap(cells[k], gc)) {
                    vertical[static_cast<std::size_t>(a) * gy + b] = g.vstrip_of(cells[k].x1, cells[k].x2) == a;
                    break;
                }
        }
    for (int a = 0; a < gx; ++a) {
        int b = 0;
        while (b < gy) {
            std::size_t k = static_cast<std::size_t>(a) * gy + b;
            if (mark[k] || !vertical[k]) {
                ++b;
                continue;
            }
            int b0 = b;
            while (b < gy && !mark[static_cast<std::size_t>(a) * gy + b] && vertical[static_cast<std::size_t>(a) * gy + b]) {
                mark[static_cast<std::size_t>(a) * gy + b] = 1;
                ++b;
            }
            result.push_back(closed_rect(g.vlines[a], g.hlines[b0], g.vlines[a + 1], g.hlines[b]));
            ++st.vertical_runs;
        }
    }
    for (int b = 0; b < gy; ++b) {
        int a = 0;
        while (a < gx) {
            if (mark[static_cast<std::size_t>(a) * gy + b]) {
                ++a;
                continue;
            }
            int a0 = a;
            while (a < gx && !mark[static_cast<std::size_t>(a) * gy + b]) {
                mark[static_cast<std::size_t>(a) * gy + b] = 1;
                ++a;
            }
            result.push_back(closed_rect(g.vlines[a0], g.hlines[b], g.vlines[a], g.hlines[b + 1]));
            ++st.horizontal_runs;
        }
    }
    std::sort(result.begin(), result.end());
    CellPartition p;
    p.box = inst.box;
    p.seed = seed;
    p.cells = std::move(result);
    p.initial_cells = base.initial_cells;
    p.initial_excess = base.initial_excess;
    p.sampled = base.sampled;
    fill_stats(p, inst, f, opt, r);
    out = std::move(p);
    st.bound = 4LL * 144 * cfg.c_star * rp;
    auto rep = check_r_good(out, inst, f, opt, r, static_cast<int>(std::min<std::int64_t>(st.bound / std::max(r, 1), 1 << 30)));
    bool aligned = true;
    auto z = g.points();
    for (const auto& c : out.cells) aligned = aligned && is_aligned(c, z);
    why = rep.detail + (aligned ? "" : "cell not grid-aligned; ");
    return rep.ok() && aligned;
}

}  // namespace

CellPartition build_grid_aligned_r_good(const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r,
                                        const Grid& g, std::uint64_t seed, const PartitionConfig& cfg,
                                        AlignedStats* stats) {
    check_r_range(f, opt, r, 16, cfg, "build_grid_aligned_r_good");
    if (!is_valid_fake_set(f, inst.box)) throw std::invalid_argument("build_grid_aligned_r_good: invalid fake set");
    auto z = g.points();
    for (const auto& q : f.rects)
        if (!is_aligned(q, z)) throw std::invalid_argument("build_grid_aligned_r_good: fake set not aligned with grid");
    // the base partition is 8r-good
    if (opt.value() > 0 && 8 * r > 20 * opt.value())
        throw PartitionFailure("build_grid_aligned_r_good: 8r = " + std::to_string(8 * r) + " exceeds 20|OPT'| = " +
                               std::to_string(20 * opt.value()));
    std::string first;
    int lo = 1 << 30, hi = 0;
    for (int a = 0; a < cfg.retries; ++a) {
        CellPartition p;
        AlignedStats st;
        std::string why;
        bool ok = aligned_attempt(inst, f, opt, r, g, derive_seed(seed, "aligned-r-good", a), cfg, p, st, why);
        p.attempts = a + 1;
        if (ok) {
            if (stats) *stats = st;
            return p;
        }
        if (a == 0) first = why;
        lo = std::min(lo, p.size());
        hi = std::max(hi, p.size());
    }
    throw PartitionFailure("build_grid_aligned_r_good: " + std::to_string(cfg.retries) + " attempts failed (first: " +
                           first + "), cell counts " + std::to_string(lo) + ".." + std::to_string(hi));
}

}  // namespace misr
