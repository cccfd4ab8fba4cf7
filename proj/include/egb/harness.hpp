#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egb/evaluation.hpp"
#include "egb/grouping.hpp"
#include "egb/model.hpp"

namespace egb {

struct GenShape {
    int events = 0;
    int students = 0;
    int lecturers = 0;
    int rooms = 0;
    int days = 5;
    int slots_per_day = 8;
    std::uint64_t seed = 0;
};

// Deterministic for a fixed shape and seed: durations in {1,2,3}, weights
// uniform in [0.5, 2.0], lecturers uniform, enrollments sized so the largest
// room always fits. Throws std::invalid_argument for shapes that cannot
// satisfy that guarantee.
Instance generate_instance(const GenShape& shape);

struct SweepRow {
    int m = 0;
    std::string signature;
    // Indexed by criterion order; empty when the criterion was not swept.
    std::array<std::optional<double>, kCriterionCount> values;
};

struct SweepReport {
    std::string instance_name;
    int n = 0;
    std::vector<int> m_values;
    std::vector<SweepRow> rows;  // one per m, ascending
    std::vector<Criterion> criteria;
    EvalParams params;
};

struct TopResult {
    Criterion criterion = Criterion::Index;
    int m = 0;
    double value = 0.0;

    bool operator==(const TopResult&) const = default;
};

struct RangeResult {
    int m_low = 0;   // smallest m among the top results
    int m_high = 0;  // largest m among the top results
    int m_max = 0;   // floor(n/2)
    double low_divisor = 0.0;   // m_max/m_low, rounded half-up to 1 decimal
    double high_divisor = 0.0;  // m_max/m_high, rounded half-up to 1 decimal
};

inline std::vector<int> full_m_range(int n) {
    std::vector<int> ms;
    for (int m = 2; m <= max_group_count(n); ++m) ms.push_back(m);
    return ms;
}

// One egb_run per (m, criterion) cell. Cells are independent jobs; with
// workers > 1 they run on a small thread pool and are gathered positionally,
// so the report never depends on completion order. workers <= 0 picks a
// hardware-based default.
SweepReport sweep(const Instance& inst, const std::vector<int>& m_set,
                  const std::vector<Criterion>& criteria, const EvalParams& params,
                  int workers = 1);

// Per criterion, the (m, value) minimizing value; ties go to the smallest m.
std::map<Criterion, TopResult> best_by_criterion(const SweepReport& r);

// The k smallest cells, ascending; ties by smaller m, then criterion order.
// Throws std::out_of_range when k exceeds the populated cell count.
std::vector<TopResult> top_k(const SweepReport& r, int k);

RangeResult range_analysis(const std::vector<TopResult>& tops, int n);

// Counts per criterion plus percent of the total, rounded half-up to 1
// decimal; criteria without results report (0, 0.0).
std::map<Criterion, std::pair<int, double>> criterion_share(const std::vector<TopResult>& tops);

// Restriction of the sweep range: [max(2, ceil(n/low_div)), min(n/2, floor(n/high_div))].
// May be empty (first > second); callers fall back to the full range.
std::pair<int, int> prune_range(int n, double low_div = 33.3, double high_div = 6.67);

// header m,groups,index,weight,number,duration; one row per m, values to
// 3 decimals, signature quoted.
std::string emit_report_csv(const SweepReport& r);

// Inverse of emit_report_csv; n is recovered from the signature column.
SweepReport parse_report_csv(const std::string& text, const std::string& name = "");

// Two-column m,value series for one criterion, ordered by m.
std::string emit_plot_series(const SweepReport& r, Criterion c);

double round_half_up_1dp(double x);

}  // namespace egb
