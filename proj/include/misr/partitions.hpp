#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "misr/fakes.hpp"
#include "misr/grids.hpp"

namespace misr {

struct PartitionConfig {
    int c_star = 200;         // cell-count constant
    int retries = 64;         // seeds tried before giving up
    int excess_threshold = 10;
    bool strict = false;      // enforce max{|F|,3} <= r <= |OPT'|/2 (and /16 for the aligned variant)
};

// Rectangular cells tiling the box. fake_of[k] is the index of the fake
// rectangle equal to cell k, or -1.
struct CellPartition {
    Rect box;
    std::vector<Rect> cells;
    std::vector<int> fake_of;
    std::vector<int> n_p;     // OPT' rectangles meeting the closed cell
    std::vector<int> excess;  // floor(r * n_p / |OPT'|), 0 for fake cells
    int r = 0;
    int opt_size = 0;

    // construction diagnostics
    std::uint64_t seed = 0;
    int attempts = 0;
    int initial_cells = 0;        // cells of the ray-shooting partition
    int subdivided_cells = 0;     // cells replaced by the excess subdivision
    int sampled = 0;              // |W|
    std::vector<int> initial_excess;  // excess of every non-fake initial cell

    int size() const { return static_cast<int>(cells.size()); }
    AlignmentPointSet corners() const { return AlignmentPointSet::from_rects(cells); }
};

int count_meeting(const Rect& cell, const Instance& inst, const std::vector<int>& opt);

// Recomputes n_p and excess from scratch.
void fill_stats(CellPartition& p, const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r);

struct GoodReport {
    bool tiles = false;       // cells internally disjoint and covering the box
    bool np_bound = false;    // every cell: n_p <= 20 |OPT'| / r
    bool fakes_are_cells = false;
    bool count_bound = false; // |cells| <= c* r
    bool stats_match = false; // stored stats equal a fresh recount
    std::string detail;
    bool ok() const { return tiles && np_bound && fakes_are_cells && count_bound && stats_match; }
};

GoodReport check_r_good(const CellPartition& p, const Instance& inst, const FakeSet& f, const IndependentSet& opt,
                        int r, int c_star);

// True when the cells tile the box exactly.
bool tiles_box(const std::vector<Rect>& cells, const Rect& box);

// Partition of the box by the boundaries of X and vertical rays shot up from
// top corners and down from bottom corners to the first rectangle or the box.
std::vector<Rect> ray_partition(const Rect& box, const std::vector<Rect>& x, int* nonrect_faces = nullptr);

std::vector<Rect> subdivide_excess_cell(const Rect& cell, const Instance& inst, const IndependentSet& opt, int r,
                                        int t);

class PartitionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CellPartition build_r_good_partition(const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r,
                                     std::uint64_t seed, const PartitionConfig& cfg = {});

struct AlignedStats {
    int base_cells = 0;      // the 8r-good partition
    int split_cells = 0;     // after splitting at extreme grid lines
    int large = 0, neutral = 0, vertical_runs = 0, horizontal_runs = 0;
    std::int64_t bound = 0;  // 4 * 144 * c* * 8r
};

CellPartition build_grid_aligned_r_good(const Instance& inst, const FakeSet& f, const IndependentSet& opt, int r,
                                        const Grid& g, std::uint64_t seed, const PartitionConfig& cfg = {},
                                        AlignedStats* stats = nullptr);

}  // namespace misr
