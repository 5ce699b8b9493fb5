#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "misr/partitions.hpp"

namespace misr {

// Dual of a cell partition: one vertex per cell plus the outer face, which is
// vertex index cells.size().
struct DualGraph {
    Rect box;
    std::vector<Rect> cells;
    std::vector<std::vector<int>> adj;  // sorted, simple
    std::vector<std::int64_t> weight;
    int max_face = 0;                   // largest number of faces meeting at a corner
    bool biconnected = false;

    int n() const { return static_cast<int>(adj.size()); }
    int outer() const { return static_cast<int>(cells.size()); }
    std::int64_t total_weight() const;
    bool has_edge(int a, int b) const;
};

DualGraph build_dual(const std::vector<Rect>& cells, const Rect& box);
DualGraph build_dual(const CellPartition& p);

// Vertices whose removal disconnects the graph.
std::vector<int> articulation_points(const DualGraph& g);

enum class Side : char { exterior = 0, interior = 1, on_cycle = 2 };

struct SeparatorCycle {
    std::vector<int> cycle;
    std::vector<Side> side;  // per vertex
    std::int64_t interior_weight = 0;
    std::int64_t exterior_weight = 0;
    std::int64_t cycle_weight = 0;

    bool passes_outer(const DualGraph& g) const;
};

// Classifies every vertex against the closed curve through the cycle's cells.
// When the outer face is on the cycle the curve leaves the box through the two
// neighbouring cells and closes along the shorter arc outside the box, so the
// interior is the side containing that arc.
SeparatorCycle classify_cycle(const DualGraph& g, const std::vector<int>& cycle);

bool is_simple_cycle(const DualGraph& g, const std::vector<int>& cycle);
// len^2 <= 8 floor(s/2) n, the squared form of 2 sqrt(2 floor(s/2) n).
bool within_length_bound(const DualGraph& g, std::size_t len);
bool is_balanced(const SeparatorCycle& c, std::int64_t total);
bool is_feasible_separator(const DualGraph& g, const SeparatorCycle& c);

struct CycleSearchConfig {
    int cycle_cap = 20000;                  // distinct cycles collected
    std::int64_t node_cap = 4'000'000;      // DFS steps in the exhaustive pass
    int exhaustive_limit = 25;              // graphs up to this size are searched exhaustively
};

// Distinct simple cycles of length >= 3 within the length bound: BFS
// fundamental cycles from every root, then an exhaustive DFS by increasing
// length (always on small graphs, as a fallback otherwise).
std::vector<std::vector<int>> candidate_cycles(const DualGraph& g, const CycleSearchConfig& cfg = {});

class SeparatorFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Feasible cycle with the smallest heavier side; ties by length.
SeparatorCycle cycle_separator(const DualGraph& g, const CycleSearchConfig& cfg = {});

struct SplitConfig {
    double c1 = 8, c2 = 8, c3 = 128, c_tilde = 128;
    bool strict = false;
    int eval_cap = 300;  // candidate cycles turned into fake sets
    CycleSearchConfig search;
    PartitionConfig partition;
};

struct SplitResult {
    FakeSet f1;  // region outside J
    FakeSet f2;  // region inside J
    std::vector<int> cycle;
    std::vector<int> j_cells;    // cycle cells and interior cells
    std::vector<int> a_cells;    // cycle cells
    bool outer_on_cycle = false;
    int opt1 = 0, opt2 = 0;      // exact optima of the children
    int lost = 0;                // OPT' rectangles in neither child
    std::int64_t a_np = 0;       // sum of N_P over the cycle cells
    bool balance_applies = false;  // a_np <= |OPT'|/12, the case where the 3/4 bound follows
    int candidates = 0;          // feasible cycles evaluated
};

// J is the union of the cycle cells and the cells inside the cycle. The
// children are f1 = tiles(J) + fakes outside J and f2 = tiles(B\J) + fakes in J.
SplitResult split_from_cycle(const Instance& inst, const FakeSet& f, const IndependentSet& opt,
                             const CellPartition& p, const DualGraph& g, const SeparatorCycle& c, OptOracle& orc);

// Weight 1 on every fake cell.
SplitResult split_reduce_boundary(const Instance& inst, const FakeSet& f, const IndependentSet& opt,
                                  const CellPartition& p, OptOracle& orc, const SplitConfig& cfg = {});

// Weight of a cell = OPT' rectangles whose upper left corner lies in
// [x1, x2) x (y1, y2] of the cell.
std::vector<std::int64_t> upper_left_weights(const CellPartition& p, const Instance& inst, const IndependentSet& opt);

SplitResult split_balanced(const Instance& inst, const FakeSet& f, const IndependentSet& opt, const CellPartition& p,
                           OptOracle& orc, const SplitConfig& cfg = {});

class DecompositionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TripleResult {
    FakeSet f1, f2, f3;
    int r = 0;
    bool shortcut = false;       // L <= 3: first stage replaced by (F, {B})
    int opt = 0;                 // exact optimum of the parent
    int opt1 = 0, opt2 = 0, opt3 = 0;
    bool balance_applies = false;
};

// r = floor((L* / (k (c1 + c2)))^2); relaxed mode raises it to max(L, 3).
int split_r(int l_star, int l, int k, const SplitConfig& cfg);

TripleResult decompose_triple(const Instance& inst, const FakeSet& f, int l_star, std::uint64_t seed,
                              OptOracle& orc, const SplitConfig& cfg = {});
TripleResult decompose_triple_grid(const Instance& inst, const FakeSet& f, int l_star, const Grid& g,
                                   std::uint64_t seed, OptOracle& orc, const SplitConfig& cfg = {});

struct PairResult {
    FakeSet f1, f2;
    int r = 0;
    int opt = 0, opt1 = 0, opt2 = 0;
};

PairResult decompose_pair_grid(const Instance& inst, const FakeSet& f, const Grid& g, std::uint64_t seed,
                               OptOracle& orc, const SplitConfig& cfg = {});

}  // namespace misr
