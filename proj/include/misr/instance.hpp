#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "misr/geometry.hpp"

namespace misr {

// Open input rectangles plus a closed bounding box.
struct Instance {
    std::vector<Rect> rects;
    Rect box;

    int n() const { return static_cast<int>(rects.size()); }
    // Builds an instance over integer rectangles with box [0, 2n+1]^2.
    static Instance canonical_box(std::vector<Rect> rects);
};

// Raw input; coordinates may be fractional or tied.
struct RawRect {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};

// sources[k] lists the source indices that transformed rectangle k stands for.
// Lifting picks the first source of every chosen rectangle.
struct SolutionLift {
    std::vector<std::vector<int>> sources;

    std::vector<int> lift(const std::vector<int>& indices) const;
    static SolutionLift identity(int n);
    // this after inner: indices of inner's target -> this's sources
    SolutionLift compose(const SolutionLift& inner) const;
};

bool is_canonical(const Instance& inst);

// Intersection relation as a flat n*n 0/1 matrix.
std::vector<char> adjacency_matrix(const std::vector<Rect>& rects);

std::pair<Instance, SolutionLift> canonicalize(const std::vector<RawRect>& raw);
std::pair<Instance, SolutionLift> canonicalize(const std::vector<Rect>& raw);

struct KernelStats {
    int interval_mis_x = 0;
    int interval_mis_y = 0;
    int vlines = 0;
    int hlines = 0;
    int distinct = 0;
};

// Rounds every rectangle outward to a small set of grid lines built from
// interval independent sets of the two projections. The kernel lives in doubled
// coordinates (source rect R maps inside 2R) so every open interval has an
// interior grid point. Duplicate rounded rectangles are collapsed; the lift maps
// each kernel rectangle back to all of its sources.
std::pair<Instance, SolutionLift> kernelize(const Instance& inst, KernelStats* stats = nullptr);

// Maximum independent set of open intervals, greedy by right endpoint followed
// by the containment swap. Returns indices into iv.
std::vector<int> interval_mis_swapped(const std::vector<std::pair<Coord, Coord>>& iv);

enum class GenKind { uniform_random, disjoint_grid, nested_stacks, adversarial_strips };

GenKind parse_gen_kind(const std::string& s);
std::string gen_kind_name(GenKind k);

Instance generate(GenKind kind, int n, std::uint64_t seed);

}  // namespace misr
