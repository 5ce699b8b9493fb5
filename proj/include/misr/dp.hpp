#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "misr/trees.hpp"

namespace misr {

// relevant: input rectangle coordinates +-1 and the box sides. full: every integer in the box.
enum class CoordMode { relevant, full };
// exact: basic when OPT <= tau. approx: basic when approx_divide returns at most tau.
enum class BasicVariant { exact, approx };
// encoding: one table entry per fake set. induced: entries shared by fake sets
// with the same induced rectangle set (first computed value wins).
enum class StateKey { encoding, induced };

CoordMode parse_coord_mode(const std::string& s);
std::string coord_mode_name(CoordMode m);

struct SeededDecomposition {
    FakeSet parent;
    std::vector<FakeSet> kids;  // 2 or 3
};

struct DPConfig {
    int l_star = 3;
    int tau = 2;
    double epsilon = 0.5;
    CoordMode coord_mode = CoordMode::relevant;
    BasicVariant basic = BasicVariant::exact;
    StateKey key = StateKey::encoding;
    std::int64_t max_states = 200000;
    bool cuts = true;                        // candidate pairs from single line cuts
    std::vector<SeededDecomposition> seeds;  // extra candidates, e.g. from a partitioning tree
};

struct DPStats {
    std::int64_t states = 0, basic_states = 0;
    std::int64_t pair_candidates = 0, triple_candidates = 0, seeded_used = 0;
    std::int64_t rejected_family = 0;  // candidates with a child outside the family
};

struct DPResult {
    IndependentSet solution;  // indices into the instance
    DPStats stats;
    int value() const { return solution.value(); }
};

class DPFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<Coord> family_coords(const Instance& inst, CoordMode mode);
// Valid, |F| <= L*, every corner on the coordinate lattice.
bool in_family(const FakeSet& f, const Instance& inst, const DPConfig& cfg);

bool is_basic(const Instance& inst, const FakeSet& f, const DPConfig& cfg, OptOracle& orc);

DPResult dp_solve(const Instance& inst, const DPConfig& cfg);

// Every inner node of the tree as a seeded decomposition.
std::vector<SeededDecomposition> seeds_from_tree(const PartitionTree& t);

// All valid fake sets with at most l_star closed rectangles of positive area on
// the lattice, deduplicated. Throws DPFailure past cap.
std::vector<FakeSet> enumerate_family_section5(const Instance& inst, int l_star, CoordMode mode,
                                               std::size_t cap = 1000000);

}  // namespace misr
