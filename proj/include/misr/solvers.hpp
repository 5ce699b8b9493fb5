#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "misr/instance.hpp"

namespace misr {

struct IndependentSet {
    std::vector<int> indices;  // sorted
    int value() const { return static_cast<int>(indices.size()); }
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultNodeBudget = 10'000'000;

bool is_independent(const std::vector<Rect>& rects, const std::vector<int>& indices);

// Maximum independent set by branch-and-bound on the conflict graph. Among all
// maxima returns the lexicographically smallest index set. Throws
// BudgetExceeded when more than `budget` search nodes are needed.
IndependentSet exact_mis(const std::vector<Rect>& rects, std::int64_t budget = kDefaultNodeBudget);
IndependentSet exact_mis(const Instance& inst, std::int64_t budget = kDefaultNodeBudget);
// Value only (skips the lexicographic pass).
int exact_mis_value(const std::vector<Rect>& rects, std::int64_t budget = kDefaultNodeBudget);

// Reference oracle: enumerate all 2^n subsets. n <= 24.
int naive_mis_value(const std::vector<Rect>& rects);

// Interval maximum independent set on open intervals, greedy by right end.
std::vector<int> interval_mis(const std::vector<std::pair<Coord, Coord>>& iv);

// Guarantee of approx_divide on n rectangles: ceil(log2 n) + 1 levels.
int approx_factor(int n);

struct DivideResult {
    IndependentSet set;
    int levels = 0;  // recursion levels; value >= OPT / levels
};

// Divide and conquer on vertical lines: the rectangles stabbed by the line are
// solved exactly as an interval problem, the two sides recursively.
DivideResult approx_divide_detail(const std::vector<Rect>& rects);
IndependentSet approx_divide(const Instance& inst);
IndependentSet approx_divide(const std::vector<Rect>& rects);

// kernelize -> canonicalize -> approx_divide -> lift.
IndependentSet approx_wrapped(const Instance& inst);

}  // namespace misr
