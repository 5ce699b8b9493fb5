#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "misr/separators.hpp"

namespace misr {

struct TreeNode {
    FakeSet label;
    int parent = -1;
    std::vector<int> children;
    int depth = 0;
    int opt = 0;             // exact optimum of R(label)
    int mu = 0;              // leaf: basic solver value; inner: sum over children
    std::int64_t lambda = 0; // inner nodes only
    bool discarded = false;  // child replaced by {B}
    std::string stage;       // "triple", "pair", "cleanup", ... for inner nodes
};

struct PartitionTree {
    Rect box;
    std::vector<TreeNode> nodes;  // node 0 is the root

    int add(FakeSet label, int parent, int opt);
    bool is_leaf(int v) const { return nodes[v].children.empty(); }
    std::vector<int> leaves() const;
    std::vector<int> inner() const;
    int height() const;
    // Sets mu bottom-up: leaves take leaf_value(v), inner nodes the sum.
    void fill_mu(const std::function<int(int)>& leaf_value);
};

struct LossBreakdown {
    std::int64_t by_leaves = 0;  // OPT_root - sum of leaf optima
    std::int64_t by_lambda = 0;  // sum of lambda(v)
};

LossBreakdown loss_breakdown(const PartitionTree& t);
// Throws std::logic_error when the two formulas disagree.
std::int64_t tree_loss(const PartitionTree& t);

struct TreeReport {
    bool decompositions = true;  // children form valid pairs/triples
    bool opts_match = true;      // stored optima equal a fresh solve
    bool lambda_nonneg = true;
    bool loss_consistent = true;
    bool antichains = true;      // per depth and all leaves: disjoint regions, sum OPT <= OPT_root
    bool leaves_basic = true;
    bool mu_sums = true;
    bool final_bound = true;     // mu(root) >= (1 - eps/2)(OPT - Loss)
    std::int64_t loss = 0;
    std::vector<std::string> failures;
    bool ok() const {
        return decompositions && opts_match && lambda_nonneg && loss_consistent && antichains && leaves_basic &&
               mu_sums && final_bound;
    }
};

using BasicPredicate = std::function<bool(const FakeSet&, int opt)>;

TreeReport verify_tree(const PartitionTree& t, const Instance& inst, const BasicPredicate& basic, double epsilon,
                       OptOracle& orc);

// Full-scale parameters, kept in log2 form since the values overflow any
// integer type long before they separate regimes.
struct Parameters {
    double epsilon = 0.5;
    double c_star = 200, c_star2 = 200, c1 = 8, c2 = 8, c3 = 128, c_tilde = 128;

    // base 4/3 logarithms as in the two QPTAS sections
    double section5_l_star(double opt) const;  // 2 c3 log OPT / eps
    double section5_tau(double opt) const;     // 64 L*^2

    struct Schedule {
        double log2_n = 0;  // N = |OPT|
        int h_star = 0, h = 0, delta = 3;
        std::vector<double> l;           // L_1..L_{h*}
        std::vector<double> log2_rho;    // rho_1..rho_{h*}
        double log2_eta = 0;
        double log2_tau_star = 0;
        bool rho_bound = false;  // rho_i >= (32 L_j^{2 delta + 4})^320 for i < h, j <= h
        bool opt_bound = false;  // OPT >= rho_{h-1} implies OPT >= 512 L_j^{2 delta + 4}
    };
    Schedule schedule(double log2_n) const;
};

// Smallest log2 N (doubling search) whose schedule has h >= 2 and satisfies both
// inequalities; returns -1 if none up to limit.
double smallest_valid_log2_n(const Parameters& p, double limit = 1e12);

struct Section5Config {
    int l_star = 8;
    int tau = 2;                 // basic when OPT <= tau
    std::uint64_t seed = 1;
    int seed_tries = 8;          // decompositions tried per node for the |F_i| <= L* clause
    SplitConfig split;
};

struct Section5Stats {
    int nodes = 0, levels = 0, seed_retries = 0;
    std::vector<std::int64_t> level_loss;  // sum of lambda per depth
    int max_label = 0;
};

PartitionTree build_section5_tree(const Instance& inst, const Section5Config& cfg, OptOracle& orc,
                                  Section5Stats* stats = nullptr);

struct CleanupConfig {
    double c_tilde = 128;
    std::uint64_t seed = 1;
    int seed_tries = 2;
    SplitConfig split;
};

struct CleanupStats {
    int delta = 0;
    int pairs = 0, discarded = 0, three_quarter_misses = 0;
    int grid_cuts = 0;      // pairs taken from the grid-line fallback
    std::int64_t loss = 0;
    double loss_bound = 0;  // 12 c~ OPT / L2
};

PartitionTree build_cleanup_tree(const Instance& inst, const FakeSet& f, const Grid& g, int l1, int l2,
                                 const CleanupConfig& cfg, OptOracle& orc, CleanupStats* stats = nullptr);

struct PhaseConfig {
    int l1 = 2, l2 = 6;
    double drop_factor = 2;      // stage 1 runs while OPT(v) > OPT_F / drop_factor
    double c_tilde = 128;
    std::uint64_t seed = 1;
    int seed_tries = 8;
    int level = 1;               // reporting only
    SplitConfig split;
};

struct PhaseStats {
    int triples = 0, discarded = 0, middle_misses = 0, cleanups = 0;
    int stage1_height = 0;
    std::int64_t stage1_loss = 0, cleanup_loss = 0;
    double loss_bound = 0;  // 24 c~ OPT / L1
};

PartitionTree build_phase_tree(const Instance& inst, const FakeSet& f, const Grid& g, const PhaseConfig& cfg,
                               OptOracle& orc, PhaseStats* stats = nullptr);

}  // namespace misr
