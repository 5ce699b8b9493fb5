#include "misr/dp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace misr {

CoordMode parse_coord_mode(const std::string& s) {
    if (s == "relevant") return CoordMode::relevant;
    if (s == "full") return CoordMode::full;
    throw std::invalid_argument("unknown coord mode: " + s);
}

std::string coord_mode_name(CoordMode m) { return m == CoordMode::relevant ? "relevant" : "full"; }

std::vector<Coord> family_coords(const Instance& inst, CoordMode mode) {
    const Rect& b = inst.box;
    std::vector<Coord> c;
    if (mode == CoordMode::full) {
        for (Coord x = std::min(b.x1, b.y1); x <= std::max(b.x2, b.y2); ++x) c.push_back(x);
        return c;
    }
    c = {b.x1, b.x2, b.y1, b.y2};
    for (const auto& r : inst.rects)
        for (Coord v : {r.x1, r.x2, r.y1, r.y2})
            for (Coord d : {-1, 0, 1}) c.push_back(v + d);
    c = sorted_unique(std::move(c));
    Coord lo = std::min(b.x1, b.y1), hi = std::max(b.x2, b.y2);
    c.erase(std::remove_if(c.begin(), c.end(), [&](Coord v) { return v < lo || v > hi; }), c.end());
    return c;
}

namespace {

bool on(const std::vector<Coord>& c, Coord v) { return std::binary_search(c.begin(), c.end(), v); }

bool on_lattice(const FakeSet& f, const std::vector<Coord>& c) {
    for (const auto& r : f.rects)
        if (!on(c, r.x1) || !on(c, r.x2) || !on(c, r.y1) || !on(c, r.y2)) return false;
    return true;
}

}  // namespace

bool in_family(const FakeSet& f, const Instance& inst, const DPConfig& cfg) {
    if (f.size() > cfg.l_star) return false;
    if (!is_valid_fake_set(f, inst.box)) return false;
    return on_lattice(f, family_coords(inst, cfg.coord_mode));
}

bool is_basic(const Instance& inst, const FakeSet& f, const DPConfig& cfg, OptOracle& orc) {
    auto idx = induced_indices(inst, f);
    if (idx.empty()) return true;
    if (cfg.basic == BasicVariant::approx) {
        std::vector<Rect> sub;
        for (int i : idx) sub.push_back(inst.rects[i]);
        return approx_divide(sub).value() <= cfg.tau;
    }
    return orc.value(idx) <= cfg.tau;
}

namespace {

class Solver {
public:
    Solver(const Instance& inst, const DPConfig& cfg) : inst_(inst), cfg_(cfg), orc_(inst) {
        coords_ = family_coords(inst, cfg.coord_mode);
        // cut positions: rectangle sides strictly inside the box
        for (const auto& r : inst.rects) {
            xs_.push_back(r.x1);
            xs_.push_back(r.x2);
            ys_.push_back(r.y1);
            ys_.push_back(r.y2);
        }
        auto keep = [&](std::vector<Coord>& v, Coord lo, Coord hi) {
            v = sorted_unique(std::move(v));
            v.erase(std::remove_if(v.begin(), v.end(), [&](Coord a) { return a <= lo || a >= hi || !on(coords_, a); }),
                    v.end());
        };
        keep(xs_, inst.box.x1, inst.box.x2);
        keep(ys_, inst.box.y1, inst.box.y2);
        for (const auto& s : cfg.seeds) seeds_[encoding(s.parent)].push_back(&s);
    }

    IndependentSet solve(const FakeSet& f) {
        std::string enc = encoding(f);
        if (auto it = table_.find(enc); it != table_.end()) return it->second;
        std::vector<int> idx;
        if (cfg_.key == StateKey::induced) {
            idx = induced_indices(inst_, f);
            if (auto it = by_induced_.find(idx); it != by_induced_.end()) return it->second;
        }
        if (++stats.states > cfg_.max_states)
            throw DPFailure("dp_solve: state cap exceeded (" + std::to_string(stats.states) + " states)");
        IndependentSet best;
        if (is_basic(inst_, f, cfg_, orc_)) {
            ++stats.basic_states;
            best = orc_.solve(f);
        } else {
            best = candidates(f);
        }
        table_.emplace(enc, best);
        if (cfg_.key == StateKey::induced) by_induced_.emplace(idx, best);
        return best;
    }

    DPStats stats;

private:
    IndependentSet join(const std::vector<FakeSet>& kids) {
        IndependentSet out;
        for (const auto& k : kids) {
            auto s = solve(k);
            out.indices.insert(out.indices.end(), s.indices.begin(), s.indices.end());
        }
        std::sort(out.indices.begin(), out.indices.end());
        return out;
    }

    bool family(const FakeSet& f) {
        if (f.size() > cfg_.l_star || !on_lattice(f, coords_)) {
            ++stats.rejected_family;
            return false;
        }
        return true;
    }

    IndependentSet candidates(const FakeSet& f) {
        IndependentSet best;  // the {B},{B} pair
        const Rect& box = inst_.box;
        if (auto it = seeds_.find(encoding(f)); it != seeds_.end()) {
            for (const auto* s : it->second) {
                bool ok = std::all_of(s->kids.begin(), s->kids.end(), [&](const FakeSet& k) { return family(k); });
                if (!ok || !is_decomposition(f, s->kids, box)) continue;
                ++(s->kids.size() == 3 ? stats.triple_candidates : stats.pair_candidates);
                ++stats.seeded_used;
                auto x = join(s->kids);
                if (x.value() > best.value()) best = std::move(x);
            }
        }
        if (!cfg_.cuts) return best;
        for (int vert = 1; vert >= 0; --vert) {
            for (Coord at : vert ? xs_ : ys_) {
                auto lo = cut_side(f, box, at, vert, true);
                auto hi = cut_side(f, box, at, vert, false);
                if (!family(lo) || !family(hi)) continue;
                // a side without input rectangles adds nothing
                if (induced_indices(inst_, lo).empty() || induced_indices(inst_, hi).empty()) continue;
                if (!is_decomposition_pair(f, lo, hi, box)) continue;
                ++stats.pair_candidates;
                auto x = join({lo, hi});
                if (x.value() > best.value()) best = std::move(x);
            }
        }
        return best;
    }

    const Instance& inst_;
    const DPConfig& cfg_;
    OptOracle orc_;
    std::vector<Coord> coords_, xs_, ys_;
    std::unordered_map<std::string, std::vector<const SeededDecomposition*>> seeds_;
    std::unordered_map<std::string, IndependentSet> table_;
    std::map<std::vector<int>, IndependentSet> by_induced_;
};

}  // namespace

DPResult dp_solve(const Instance& inst, const DPConfig& cfg) {
    if (cfg.l_star < 1) throw std::invalid_argument("dp_solve: L* must be at least 1 so that {B} is in the family");
    Solver s(inst, cfg);
    DPResult out;
    out.solution = s.solve(FakeSet{});
    out.stats = s.stats;
    return out;
}

std::vector<SeededDecomposition> seeds_from_tree(const PartitionTree& t) {
    std::vector<SeededDecomposition> out;
    for (int v : t.inner()) {
        SeededDecomposition d;
        d.parent = t.nodes[v].label;
        for (int c : t.nodes[v].children) d.kids.push_back(t.nodes[c].label);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<FakeSet> enumerate_family_section5(const Instance& inst, int l_star, CoordMode mode, std::size_t cap) {
    auto c = family_coords(inst, mode);
    const Rect& b = inst.box;
    std::vector<Coord> xs, ys;
    for (Coord v : c) {
        if (v >= b.x1 && v <= b.x2) xs.push_back(v);
        if (v >= b.y1 && v <= b.y2) ys.push_back(v);
    }
    std::vector<Rect> pool;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            for (std::size_t k = 0; k < ys.size(); ++k)
                for (std::size_t l = k + 1; l < ys.size(); ++l) pool.push_back(closed_rect(xs[i], ys[k], xs[j], ys[l]));
    std::sort(pool.begin(), pool.end());
    std::vector<FakeSet> out{FakeSet{}};
    std::vector<int> pick;
    // increasing pool indices give each set once
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == l_star) return;
        for (int i = from; i < static_cast<int>(pool.size()); ++i) {
            bool ok = true;
            for (int p : pick) ok = ok && !interiors_overlap(pool[p], pool[i]);
            if (!ok) continue;
            pick.push_back(i);
            FakeSet f;
            for (int p : pick) f.rects.push_back(pool[p]);
            out.push_back(std::move(f));
            if (out.size() > cap) throw DPFailure("enumerate_family_section5: more than " + std::to_string(cap) + " sets");
            self(self, i + 1);
            pick.pop_back();
        }
    };
    if (l_star > 0) rec(rec, 0);
    return out;
}

}  // namespace misr
