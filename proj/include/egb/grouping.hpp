#pragma once

#include <string>
#include <vector>

#include "egb/model.hpp"

namespace egb {

// An ordering of all event indices; always a bijection on 0..n-1.
using Permutation = std::vector<int>;

enum class Criterion { Index, Weight, Number, Duration };

inline constexpr Criterion kAllCriteria[] = {Criterion::Index, Criterion::Weight,
                                             Criterion::Number, Criterion::Duration};
inline constexpr int kCriterionCount = 4;

const std::string& to_string(Criterion c);
Criterion criterion_from_string(const std::string& name);

struct Window {
    int from = 0;
    int to = 0;  // inclusive

    int size() const { return to - from + 1; }
    bool operator==(const Window&) const = default;
};

// m contiguous windows over positions 0..n-1 whose sizes differ by at most one.
// The n mod m larger windows come first.
struct Grouping {
    int n = 0;
    int m = 0;
    std::vector<Window> windows;
};

// Upper bound on the group count: every group must hold at least two events.
inline int max_group_count(int n) { return n / 2; }

// Splits 0..n-1 into m contiguous windows, the first n mod m of size
// floor(n/m)+1 and the rest of size floor(n/m).
// Throws std::invalid_argument for n < 4, std::out_of_range for m outside
// [2, floor(n/2)].
Grouping partition(int n, int m);

// Compact rendering of the window sizes, e.g. "12x7; 1x6".
std::string signature(const Grouping& g);

// Orders event indices by the criterion: Index ascending; Weight, Number
// (enrolled students) and Duration descending. Ties always break toward the
// smaller index.
Permutation sort_events(const Instance& inst, Criterion c);

// Cyclic left shift by k of the slice [from, to]; elements outside are untouched.
Permutation rotate_window(Permutation p, int from, int to, long k);

}  // namespace egb
