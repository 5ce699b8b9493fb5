#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "misr/instance.hpp"
#include "misr/solvers.hpp"

namespace misr {

// Closed, internally disjoint rectangles inside the box. S(F) is the box minus
// their union; |rects| is the boundary complexity.
struct FakeSet {
    std::vector<Rect> rects;
    std::string provenance;

    int size() const { return static_cast<int>(rects.size()); }
    static FakeSet whole(const Rect& box, std::string tag = "box");
};

bool is_valid_fake_set(const FakeSet& f, const Rect& box);

// Sorted copy; encoding() of equal sets is equal.
FakeSet normalized(FakeSet f);
std::string encoding(const FakeSet& f);

// R is inside S(F): within the box and no interior overlap with any fake.
bool rect_in_region(const Rect& r, const FakeSet& f, const Rect& box);
std::vector<int> induced_indices(const Instance& inst, const FakeSet& f);

struct SubInstance {
    Instance inst;           // same box as the parent
    std::vector<int> index;  // sub rect k is parent rect index[k]
};

SubInstance subinstance(const Instance& inst, const FakeSet& f);

// Elementary cells of (xs, ys) lying in S(F).
CellRegion region_cells(const FakeSet& f, const Rect& box, const std::vector<Coord>& xs,
                        const std::vector<Coord>& ys);
CellRegion region_cells(const FakeSet& f, const Rect& box);
Coord region_area(const FakeSet& f, const Rect& box);

struct RegionRelation {
    bool subset = false;     // S(a) within S(b)
    bool strict = false;     // and strictly smaller area
    bool disjoint = false;   // S(a), S(b) share no area
};

RegionRelation compare_regions(const FakeSet& a, const FakeSet& b, const Rect& box);

bool is_decomposition_pair(const FakeSet& f, const FakeSet& f1, const FakeSet& f2, const Rect& box);
bool is_decomposition_triple(const FakeSet& f, const FakeSet& f1, const FakeSet& f2, const FakeSet& f3,
                             const Rect& box);
// Generic arity form used by the trees.
bool is_decomposition(const FakeSet& f, const std::vector<FakeSet>& kids, const Rect& box);

// Fake set covering exactly the given region's complement inside the box.
FakeSet fakes_from_complement(const CellRegion& region, const Rect& box, std::string tag);

// Re-tiles the union of f by the smaller sweep decomposition when that needs
// fewer rectangles. The region S(f) is unchanged.
FakeSet compact(const FakeSet& f, const Rect& box);

bool is_aligned(const FakeSet& f, const AlignmentPointSet& z);

// The part of S(F) on one side of the line x = at (vertical) or y = at; the
// other half of the box becomes one fake strip. low keeps the side below at.
FakeSet cut_side(const FakeSet& f, const Rect& box, Coord at, bool vertical, bool low);

// Exact optimum per induced sub-instance, memoized by the induced index set.
// Safe for concurrent use; the cache is idempotent.
class OptOracle {
public:
    explicit OptOracle(const Instance& inst, std::int64_t budget = kDefaultNodeBudget)
        : inst_(inst), budget_(budget) {}

    const Instance& instance() const { return inst_; }
    // Indices into the parent instance.
    IndependentSet solve(const std::vector<int>& induced);
    IndependentSet solve(const FakeSet& f) { return solve(induced_indices(inst_, f)); }
    int value(const FakeSet& f) { return solve(f).value(); }
    int value(const std::vector<int>& induced) { return solve(induced).value(); }
    std::size_t cache_size() const;

private:
    const Instance& inst_;
    std::int64_t budget_;
    mutable std::mutex mu_;
    std::map<std::vector<int>, IndependentSet> memo_;
};

}  // namespace misr
