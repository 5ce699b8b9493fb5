#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "misr/fakes.hpp"

namespace misr {

// Exact non-negative rational; rho values such as OPT/2 stay exact.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;

    static Rational of(std::int64_t n, std::int64_t d = 1);
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

// ceil(v / rho) for integer v.
std::int64_t ceil_div(std::int64_t v, const Rational& rho);

struct Grid {
    std::vector<Coord> vlines;  // first/last are the box's left/right sides
    std::vector<Coord> hlines;
    Rational declared_rho;

    int size() const { return static_cast<int>(vlines.size() + hlines.size()); }
    AlignmentPointSet points() const { return {vlines, hlines}; }
    // Strip index containing [a, b], or -1.
    int vstrip_of(Coord a, Coord b) const;
    int hstrip_of(Coord a, Coord b) const;
    static Grid boundary(const Rect& box);
};

struct GridConfig {
    int small_opt_w = 64;  // below this many rectangles the optimum is computed exactly
    std::int64_t budget = kDefaultNodeBudget;
    bool parallel = true;
};

struct StripReport {
    bool aligned = false;
    bool accurate = false;
    int opt = 0;
    std::int64_t limit = 0;    // ceil(OPT / rho)
    int worst_strip = 0;       // largest strip optimum
    std::string detail;
    bool ok() const { return aligned && accurate; }
};

// Exact check of both clauses. Strip sub-instances are solved with exact_mis;
// the strip loop runs under OpenMP when `parallel` is set.
StripReport check_rho_accurate(const Grid& g, const Instance& inst, const FakeSet& f, const Rational& rho,
                               OptOracle& orc, bool parallel = true);
bool is_rho_accurate(const Grid& g, const Instance& inst, const FakeSet& f, const Rational& rho);

struct GridBuildStats {
    int opt_estimate = 0;   // value of the approximation on the sub-instance
    int factor = 1;         // approx_factor of the sub-instance size
    bool small_branch = false;
    std::int64_t chosen_w = 0;
    int z = 0;
    std::int64_t z_bound = 0;  // 4*rho*f + 2|F| + 2
};

Grid build_rho_accurate_grid(const Instance& inst, const FakeSet& f, const Rational& rho,
                             const GridConfig& cfg = {}, GridBuildStats* stats = nullptr);

// Grid aligned with g (its lines are a subset of g's lines) that is
// rho_prime-accurate for f.
Grid refine_aligned_grid(const Grid& g, const Instance& inst, const FakeSet& f, const Rational& rho_prime,
                         const GridConfig& cfg = {}, int* fresh_size = nullptr);

}  // namespace misr
