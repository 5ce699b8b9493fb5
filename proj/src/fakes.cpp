#include "misr/fakes.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace misr {

FakeSet FakeSet::whole(const Rect& box, std::string tag) {
    FakeSet f;
    f.rects.push_back(closed_rect(box.x1, box.y1, box.x2, box.y2));
    f.provenance = std::move(tag);
    return f;
}

bool is_valid_fake_set(const FakeSet& f, const Rect& box) {
    for (std::size_t i = 0; i < f.rects.size(); ++i) {
        const auto& r = f.rects[i];
        if (!r.valid() || !box.contains(r)) return false;
        for (std::size_t j = i + 1; j < f.rects.size(); ++j)
            if (interiors_overlap(r, f.rects[j])) return false;
    }
    return true;
}

FakeSet normalized(FakeSet f) {
    for (auto& r : f.rects) r.closed = true;
    std::sort(f.rects.begin(), f.rects.end());
    return f;
}

std::string encoding(const FakeSet& f) {
    auto g = normalized(f);
    std::ostringstream os;
    for (const auto& r : g.rects) os << r.x1 << ',' << r.y1 << ',' << r.x2 << ',' << r.y2 << ';';
    return os.str();
}

bool rect_in_region(const Rect& r, const FakeSet& f, const Rect& box) {
    if (!box.contains(r)) return false;
    for (const auto& q : f.rects)
        if (interiors_overlap(r, q)) return false;
    return true;
}

std::vector<int> induced_indices(const Instance& inst, const FakeSet& f) {
    std::vector<int> out;
    for (int i = 0; i < inst.n(); ++i)
        if (rect_in_region(inst.rects[i], f, inst.box)) out.push_back(i);
    return out;
}

SubInstance subinstance(const Instance& inst, const FakeSet& f) {
    if (!is_valid_fake_set(f, inst.box)) throw std::invalid_argument("subinstance: invalid fake set");
    SubInstance s;
    s.inst.box = inst.box;
    s.index = induced_indices(inst, f);
    for (int i : s.index) s.inst.rects.push_back(inst.rects[i]);
    return s;
}

CellRegion region_cells(const FakeSet& f, const Rect& box, const std::vector<Coord>& xs,
                        const std::vector<Coord>& ys) {
    CellRegion reg;
    reg.xs = sorted_unique(xs);
    reg.ys = sorted_unique(ys);
    int nx = reg.nx(), ny = reg.ny();
    reg.inside.assign(static_cast<std::size_t>(std::max(nx, 0)) * std::max(ny, 0), 0);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            Rect c = closed_rect(reg.xs[i], reg.ys[j], reg.xs[i + 1], reg.ys[j + 1]);
            bool in = box.contains(c);
            for (const auto& q : f.rects) {
                if (!in) break;
                if (q.contains(c)) in = false;
            }
            reg.at(i, j) = in;
        }
    return reg;
}

namespace {

void add_coords(const FakeSet& f, std::vector<Coord>& xs, std::vector<Coord>& ys) {
    for (const auto& r : f.rects) {
        xs.insert(xs.end(), {r.x1, r.x2});
        ys.insert(ys.end(), {r.y1, r.y2});
    }
}

void clip(std::vector<Coord>& v, Coord lo, Coord hi) {
    for (auto& c : v) c = std::clamp(c, lo, hi);
}

}  // namespace

CellRegion region_cells(const FakeSet& f, const Rect& box) {
    std::vector<Coord> xs{box.x1, box.x2}, ys{box.y1, box.y2};
    add_coords(f, xs, ys);
    clip(xs, box.x1, box.x2);
    clip(ys, box.y1, box.y2);
    return region_cells(f, box, xs, ys);
}

Coord region_area(const FakeSet& f, const Rect& box) { return region_cells(f, box).area(); }

RegionRelation compare_regions(const FakeSet& a, const FakeSet& b, const Rect& box) {
    std::vector<Coord> xs{box.x1, box.x2}, ys{box.y1, box.y2};
    add_coords(a, xs, ys);
    add_coords(b, xs, ys);
    clip(xs, box.x1, box.x2);
    clip(ys, box.y1, box.y2);
    auto ra = region_cells(a, box, xs, ys);
    auto rb = region_cells(b, box, xs, ys);
    RegionRelation rel;
    rel.subset = true;
    rel.disjoint = true;
    bool b_extra = false;
    for (std::size_t k = 0; k < ra.inside.size(); ++k) {
        if (ra.inside[k] && !rb.inside[k]) rel.subset = false;
        if (ra.inside[k] && rb.inside[k]) rel.disjoint = false;
        if (!ra.inside[k] && rb.inside[k]) b_extra = true;
    }
    rel.strict = rel.subset && b_extra;
    return rel;
}

bool is_decomposition(const FakeSet& f, const std::vector<FakeSet>& kids, const Rect& box) {
    for (const auto& k : kids)
        if (!compare_regions(k, f, box).strict) return false;
    for (std::size_t i = 0; i < kids.size(); ++i)
        for (std::size_t j = i + 1; j < kids.size(); ++j)
            if (!compare_regions(kids[i], kids[j], box).disjoint) return false;
    return true;
}

bool is_decomposition_pair(const FakeSet& f, const FakeSet& f1, const FakeSet& f2, const Rect& box) {
    return is_decomposition(f, {f1, f2}, box);
}

bool is_decomposition_triple(const FakeSet& f, const FakeSet& f1, const FakeSet& f2, const FakeSet& f3,
                             const Rect& box) {
    return is_decomposition(f, {f1, f2, f3}, box);
}

FakeSet fakes_from_complement(const CellRegion& region, const Rect& box, std::string tag) {
    CellRegion comp = region;
    for (int i = 0; i < comp.nx(); ++i)
        for (int j = 0; j < comp.ny(); ++j) {
            Rect c = closed_rect(comp.xs[i], comp.ys[j], comp.xs[i + 1], comp.ys[j + 1]);
            comp.at(i, j) = box.contains(c) && !region.at(i, j);
        }
    FakeSet f;
    f.rects = tile_region_best(comp);
    f.provenance = std::move(tag);
    return f;
}

FakeSet compact(const FakeSet& f, const Rect& box) {
    if (f.rects.size() <= 1) return f;
    auto reg = region_cells(f, box);
    auto g = fakes_from_complement(reg, box, f.provenance);
    if (g.rects.size() < f.rects.size()) return g;
    return f;
}

bool is_aligned(const FakeSet& f, const AlignmentPointSet& z) {
    for (const auto& r : f.rects)
        if (!is_aligned(r, z)) return false;
    return true;
}

IndependentSet OptOracle::solve(const std::vector<int>& induced) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (auto it = memo_.find(induced); it != memo_.end()) return it->second;
    }
    std::vector<Rect> sub;
    sub.reserve(induced.size());
    for (int i : induced) sub.push_back(inst_.rects.at(i));
    auto local = exact_mis(sub, budget_);
    IndependentSet out;
    for (int k : local.indices) out.indices.push_back(induced[k]);
    std::sort(out.indices.begin(), out.indices.end());
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(induced, out);
    return out;
}

std::size_t OptOracle::cache_size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return memo_.size();
}

FakeSet cut_side(const FakeSet& f, const Rect& box, Coord at, bool vertical, bool low) {
    FakeSet out;
    for (Rect q : f.rects) {
        if (vertical) {
            if (low) q.x2 = std::min(q.x2, at); else q.x1 = std::max(q.x1, at);
        } else {
            if (low) q.y2 = std::min(q.y2, at); else q.y1 = std::max(q.y1, at);
        }
        if (q.x1 < q.x2 && q.y1 < q.y2) out.rects.push_back(q);
    }
    Rect strip = box;
    if (vertical) {
        if (low) strip.x1 = at; else strip.x2 = at;
    } else {
        if (low) strip.y1 = at; else strip.y2 = at;
    }
    out.rects.push_back(strip);
    out.provenance = "cut";
    return normalized(compact(out, box));
}

}  // namespace misr
