#include "egb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "egb/search.hpp"

namespace egb {

double round_half_up_1dp(double x) { return std::floor(x * 10.0 + 0.5) / 10.0; }

namespace {

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// mt19937_64 is fully specified by the standard; the distributions below are
// hand-rolled so generated instances are byte-stable across toolchains.
std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t span) { return rng() % span; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_u64(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

std::vector<std::string> make_ids(char prefix, int count) {
    int width = 1;
    for (int v = count; v >= 10; v /= 10) ++width;
    std::vector<std::string> ids;
    ids.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::string num = std::to_string(i + 1);
        ids.push_back(prefix + std::string(width - num.size(), '0') + num);
    }
    return ids;
}

}  // namespace

Instance generate_instance(const GenShape& shape) {
    if (shape.events < 4) throw std::invalid_argument("shape: at least 4 events required");
    if (shape.students < 1 || shape.lecturers < 1 || shape.rooms < 1 || shape.days < 1 ||
        shape.slots_per_day < 1)
        throw std::invalid_argument("shape: all counts must be positive");

    std::mt19937_64 rng(shape.seed);

    Instance inst;
    inst.name = "gen-e" + std::to_string(shape.events) + "-s" + std::to_string(shape.students) +
                "-l" + std::to_string(shape.lecturers) + "-r" + std::to_string(shape.rooms) +
                "-seed" + std::to_string(shape.seed);
    inst.grid = {shape.days, shape.slots_per_day};
    inst.lecturers = make_ids('l', shape.lecturers);
    inst.students = make_ids('s', shape.students);

    const auto room_ids = make_ids('r', shape.rooms);
    const int cap_lo = std::max(1, std::min(3, shape.students));
    const int cap_hi = std::max(cap_lo, std::min(shape.students, 40));
    int max_capacity = 0;
    for (int r = 0; r < shape.rooms; ++r) {
        const int cap = uniform_int(rng, cap_lo, cap_hi);
        max_capacity = std::max(max_capacity, cap);
        inst.rooms.push_back({room_ids[r], cap});
    }

    if (std::min(shape.students, max_capacity) < 1)
        throw std::invalid_argument("shape: no room can fit any feasible enrollment");

    // Students come in cohorts of ~25 that mostly attend the same events, the
    // way curricula cluster; a uniform draw over all students would make
    // nearly every event pair clash and no grid could hold the result.
    const int cohort_size = 25;
    const int cohorts = (shape.students + cohort_size - 1) / cohort_size;
    auto cohort_begin = [&](int c) { return c * cohort_size; };
    auto cohort_end = [&](int c) { return std::min((c + 1) * cohort_size, shape.students); };

    const auto event_ids = make_ids('e', shape.events);
    const int max_duration = std::min(3, shape.slots_per_day);
    std::vector<int> pool;

    for (int i = 0; i < shape.events; ++i) {
        Event e;
        e.id = event_ids[i];
        e.index = i;
        // 3-decimal grid inside (0.5, 2.0); never an exact integer
        e.weight = 0.5005 + 0.001 * uniform_int(rng, 0, 1499);
        e.duration = uniform_int(rng, 1, max_duration);
        e.lecturer = inst.lecturers[uniform_int(rng, 0, shape.lecturers - 1)];

        // one elective in six draws from the whole student body
        const bool elective = uniform_int(rng, 0, 5) == 0;
        const int cohort = uniform_int(rng, 0, cohorts - 1);
        pool.clear();
        for (int s = elective ? 0 : cohort_begin(cohort);
             s < (elective ? shape.students : cohort_end(cohort)); ++s)
            pool.push_back(s);

        const int pool_size = static_cast<int>(pool.size());
        const int lo = std::max(1, std::min({3, pool_size, max_capacity}));
        const int hi = std::min(pool_size, max_capacity);
        // quadratic bias toward small classes
        const double u = (rng() >> 11) * 0x1.0p-53;
        const int size = std::min(hi, lo + static_cast<int>(u * u * (hi - lo + 1)));
        for (int j = 0; j < size; ++j)
            std::swap(pool[j], pool[uniform_int(rng, j, pool_size - 1)]);
        pool.resize(size);
        std::sort(pool.begin(), pool.end());
        for (int s : pool) e.students.push_back(inst.students[s]);
        inst.events.push_back(std::move(e));
    }

    inst.finalize();
    return inst;
}

SweepReport sweep(const Instance& inst, const std::vector<int>& m_set,
                  const std::vector<Criterion>& criteria, const EvalParams& params, int workers) {
    const int n = inst.n();
    std::vector<int> ms = m_set;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    if (ms.empty()) throw std::invalid_argument("sweep: empty m set");
    for (int m : ms)
        if (m < 2 || m > max_group_count(n))
            throw std::out_of_range("sweep: m=" + std::to_string(m) + " out of range [2, " +
                                    std::to_string(max_group_count(n)) + "]");

    std::vector<Criterion> crits;
    for (Criterion c : kAllCriteria)
        if (std::find(criteria.begin(), criteria.end(), c) != criteria.end()) crits.push_back(c);
    if (crits.empty()) throw std::invalid_argument("sweep: empty criteria set");

    SweepReport report;
    report.instance_name = inst.name;
    report.n = n;
    report.m_values = ms;
    report.criteria = crits;
    report.params = params;
    report.rows.resize(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) {
        report.rows[i].m = ms[i];
        report.rows[i].signature = signature(partition(n, ms[i]));
    }

    struct Job {
        size_t row;
        Criterion criterion;
    };
    std::vector<Job> jobs;
    for (size_t i = 0; i < ms.size(); ++i)
        for (Criterion c : crits) jobs.push_back({i, c});

    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, static_cast<int>(jobs.size()));

    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto run_jobs = [&] {
        for (;;) {
            const size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            try {
                RunResult r = egb_run(inst, report.rows[jobs[j].row].m, jobs[j].criterion, params);
                report.rows[jobs[j].row].values[static_cast<int>(jobs[j].criterion)] = r.best_eval;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        run_jobs();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_jobs);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return report;
}

std::map<Criterion, TopResult> best_by_criterion(const SweepReport& r) {
    if (r.rows.empty()) throw std::invalid_argument("empty report");
    std::map<Criterion, TopResult> best;
    for (Criterion c : r.criteria) {
        const int ci = static_cast<int>(c);
        bool found = false;
        TopResult top{c, 0, 0.0};
        for (const SweepRow& row : r.rows) {  // ascending m: ties keep the smaller
            if (!row.values[ci]) continue;
            if (!found || *row.values[ci] < top.value) {
                found = true;
                top.m = row.m;
                top.value = *row.values[ci];
            }
        }
        if (found) best[c] = top;
    }
    return best;
}

std::vector<TopResult> top_k(const SweepReport& r, int k) {
    if (k < 1) throw std::invalid_argument("top_k: k must be >= 1");
    std::vector<TopResult> cells;
    for (const SweepRow& row : r.rows)
        for (Criterion c : r.criteria)
            if (row.values[static_cast<int>(c)])
                cells.push_back({c, row.m, *row.values[static_cast<int>(c)]});
    if (k > static_cast<int>(cells.size()))
        throw std::out_of_range("top_k: k=" + std::to_string(k) + " exceeds cell count " +
                                std::to_string(cells.size()));
    std::sort(cells.begin(), cells.end(), [](const TopResult& a, const TopResult& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.m != b.m) return a.m < b.m;
        return static_cast<int>(a.criterion) < static_cast<int>(b.criterion);
    });
    cells.resize(k);
    return cells;
}

RangeResult range_analysis(const std::vector<TopResult>& tops, int n) {
    if (tops.empty()) throw std::invalid_argument("range_analysis: no results");
    RangeResult out;
    out.m_low = tops[0].m;
    out.m_high = tops[0].m;
    for (const TopResult& t : tops) {
        out.m_low = std::min(out.m_low, t.m);
        out.m_high = std::max(out.m_high, t.m);
    }
    out.m_max = max_group_count(n);
    out.low_divisor = round_half_up_1dp(static_cast<double>(out.m_max) / out.m_low);
    out.high_divisor = round_half_up_1dp(static_cast<double>(out.m_max) / out.m_high);
    return out;
}

std::map<Criterion, std::pair<int, double>> criterion_share(const std::vector<TopResult>& tops) {
    if (tops.empty()) throw std::invalid_argument("criterion_share: no results");
    std::map<Criterion, std::pair<int, double>> shares;
    for (Criterion c : kAllCriteria) shares[c] = {0, 0.0};
    for (const TopResult& t : tops) ++shares[t.criterion].first;
    for (auto& [c, share] : shares)
        share.second = round_half_up_1dp(100.0 * share.first / static_cast<double>(tops.size()));
    return shares;
}

std::pair<int, int> prune_range(int n, double low_div, double high_div) {
    if (n < 4) throw std::invalid_argument("prune_range: n must be at least 4");
    if (!(low_div > high_div) || !(high_div > 0))
        throw std::invalid_argument("prune_range: divisors must satisfy low > high > 0");
    const int m_lo = std::max(2, static_cast<int>(std::ceil(n / low_div)));
    const int m_hi = std::min(max_group_count(n), static_cast<int>(std::floor(n / high_div)));
    return {m_lo, m_hi};
}

std::string emit_report_csv(const SweepReport& r) {
    std::string out = "m,groups,index,weight,number,duration\n";
    for (const SweepRow& row : r.rows) {
        out += std::to_string(row.m) + ",\"" + row.signature + "\"";
        for (int c = 0; c < kCriterionCount; ++c) {
            out += ",";
            if (row.values[c]) out += fixed3(*row.values[c]);
        }
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (quoted) {
            if (ch == '"')
                quoted = false;
            else
                cur += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

// "12x7; 1x6" -> total event count
int events_from_signature(const std::string& sig, int line_no) {
    long total = 0;
    size_t pos = 0;
    while (pos < sig.size()) {
        size_t x = sig.find('x', pos);
        size_t end = sig.find("; ", pos);
        if (end == std::string::npos) end = sig.size();
        if (x == std::string::npos || x >= end)
            throw ParseError("line " + std::to_string(line_no) + ": bad groups signature '" +
                             sig + "'");
        try {
            total += std::stol(sig.substr(pos, x - pos)) * std::stol(sig.substr(x + 1, end - x - 1));
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad groups signature '" +
                             sig + "'");
        }
        pos = end == sig.size() ? end : end + 2;
    }
    return static_cast<int>(total);
}

}  // namespace

SweepReport parse_report_csv(const std::string& text, const std::string& name) {
    SweepReport report;
    report.instance_name = name;

    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (!cur.empty()) lines.push_back(std::move(cur));
    if (lines.empty() || lines[0] != "m,groups,index,weight,number,duration")
        throw ParseError("line 1: expected header m,groups,index,weight,number,duration");

    std::array<bool, kCriterionCount> seen{};
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 2 + kCriterionCount)
            throw ParseError("line " + std::to_string(i + 1) + ": expected " +
                             std::to_string(2 + kCriterionCount) + " fields, got " +
                             std::to_string(fields.size()));
        SweepRow row;
        try {
            row.m = std::stoi(fields[0]);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(i + 1) + ": bad m '" + fields[0] + "'");
        }
        row.signature = fields[1];
        const int n = events_from_signature(row.signature, static_cast<int>(i + 1));
        if (report.n == 0)
            report.n = n;
        else if (report.n != n)
            throw ParseError("line " + std::to_string(i + 1) +
                             ": groups signature implies n=" + std::to_string(n) +
                             ", earlier rows had n=" + std::to_string(report.n));
        for (int c = 0; c < kCriterionCount; ++c) {
            const std::string& f = fields[2 + c];
            if (f.empty()) continue;
            try {
                row.values[c] = std::stod(f);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(i + 1) + ": bad value '" + f + "'");
            }
            seen[c] = true;
        }
        report.m_values.push_back(row.m);
        report.rows.push_back(std::move(row));
    }
    if (report.rows.empty()) throw ParseError("report has no rows");
    for (Criterion c : kAllCriteria)
        if (seen[static_cast<int>(c)]) report.criteria.push_back(c);
    return report;
}

std::string emit_plot_series(const SweepReport& r, Criterion c) {
    if (std::find(r.criteria.begin(), r.criteria.end(), c) == r.criteria.end())
        throw std::invalid_argument("criterion '" + to_string(c) + "' not present in the report");
    std::string out = "m,value\n";
    for (const SweepRow& row : r.rows)
        if (row.values[static_cast<int>(c)])
            out += std::to_string(row.m) + "," + fixed3(*row.values[static_cast<int>(c)]) + "\n";
    return out;
}

}  // namespace egb
