#pragma once

// Hand-rolled generators for property tests.

#include "misr/fakes.hpp"
#include "misr/rng.hpp"

namespace gen {

using namespace misr;

// Up to k pairwise internally disjoint fake rectangles with corners on the
// instance's coordinate range.
inline FakeSet random_fakes(Rng& rng, const Rect& box, int k, Coord max_side = 4) {
    FakeSet f;
    for (int t = 0; t < 4 * k && f.size() < k; ++t) {
        Coord w = rng.uniform(1, max_side), h = rng.uniform(1, max_side);
        if (w >= box.x2 - box.x1 || h >= box.y2 - box.y1) continue;
        Coord x = rng.uniform(box.x1, box.x2 - w), y = rng.uniform(box.y1, box.y2 - h);
        Rect r = closed_rect(x, y, x + w, y + h);
        bool ok = true;
        for (const auto& q : f.rects) ok = ok && !interiors_overlap(q, r);
        if (ok) f.rects.push_back(r);
    }
    f.provenance = "random";
    return f;
}

// Random tiling by recursive guillotine cuts.
inline void guillotine(Rng& rng, const Rect& r, int budget, std::vector<Rect>& out) {
    bool can_v = r.x2 - r.x1 >= 2, can_h = r.y2 - r.y1 >= 2;
    if (budget <= 1 || (!can_v && !can_h)) {
        out.push_back(r);
        return;
    }
    bool vert = can_v && (!can_h || rng.uniform(0, 1) == 0);
    int left = static_cast<int>(rng.uniform(1, budget - 1));
    if (vert) {
        Coord x = rng.uniform(r.x1 + 1, r.x2 - 1);
        guillotine(rng, closed_rect(r.x1, r.y1, x, r.y2), left, out);
        guillotine(rng, closed_rect(x, r.y1, r.x2, r.y2), budget - left, out);
    } else {
        Coord y = rng.uniform(r.y1 + 1, r.y2 - 1);
        guillotine(rng, closed_rect(r.x1, r.y1, r.x2, y), left, out);
        guillotine(rng, closed_rect(r.x1, y, r.x2, r.y2), budget - left, out);
    }
}

}  // namespace gen
