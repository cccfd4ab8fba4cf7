#include "egb/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "egb/evaluation.hpp"
#include "egb/harness.hpp"
#include "egb/model.hpp"
#include "egb/search.hpp"

namespace egb {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file '" + path + "'");
    out << content;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

struct EvalFlagValues {
    double w_gap = 0, w_single = 0, w_last = 0, unplaced = 0, hard = 0;
    CLI::Option* o_gap = nullptr;
    CLI::Option* o_single = nullptr;
    CLI::Option* o_last = nullptr;
    CLI::Option* o_unplaced = nullptr;
    CLI::Option* o_hard = nullptr;
    std::string config_path;

    void attach(CLI::App* cmd) {
        o_gap = cmd->add_option("--w-gap", w_gap, "Weight per idle student-slot");
        o_single = cmd->add_option("--w-single", w_single, "Weight per single-event student-day");
        o_last = cmd->add_option("--w-last", w_last, "Weight per day-final slot use");
        o_unplaced = cmd->add_option("--unplaced-penalty", unplaced, "Penalty per unplaced event");
        o_hard = cmd->add_option("--hard-penalty", hard, "Penalty per hard violation");
        cmd->add_option("--config", config_path, "Config JSON with an optional \"eval\" object");
    }

    // config file first, explicit flags on top
    EvalParams resolve() const {
        EvalParams p;
        if (!config_path.empty()) p = eval_params_from_config(read_file(config_path), p);
        if (o_gap->count()) p.w_gap = w_gap;
        if (o_single->count()) p.w_single = w_single;
        if (o_last->count()) p.w_last = w_last;
        if (o_unplaced->count()) p.unplaced_penalty = unplaced;
        if (o_hard->count()) p.hard_penalty = hard;
        if (p.w_gap < 0 || p.w_single < 0 || p.w_last < 0)
            throw std::invalid_argument("eval weights must be >= 0");
        if (!(p.unplaced_penalty > 0) || !(p.hard_penalty > 0))
            throw std::invalid_argument("unplaced/hard penalties must be > 0");
        return p;
    }
};

std::vector<Criterion> parse_criteria(const std::string& selection) {
    std::vector<Criterion> out;
    if (selection == "all") {
        out.assign(std::begin(kAllCriteria), std::end(kAllCriteria));
        return out;
    }
    std::string cur;
    std::istringstream in(selection);
    while (std::getline(in, cur, ',')) out.push_back(criterion_from_string(cur));
    if (out.empty()) throw std::invalid_argument("empty criterion list");
    return out;
}

void print_tops(std::ostream& os, const std::vector<TopResult>& tops) {
    for (size_t i = 0; i < tops.size(); ++i)
        os << "  " << i + 1 << "  " << to_string(tops[i].criterion) << "\tm=" << tops[i].m << "\t"
           << fixed(tops[i].value, 3) << "\n";
}

int do_report(const std::string& path, int top) {
    const std::string name = std::filesystem::path(path).stem().string();
    const SweepReport report = parse_report_csv(read_file(path), name);

    std::cout << "report: " << name << "  n=" << report.n << "  rows=" << report.rows.size()
              << "\n";
    std::cout << "best by criterion:\n";
    for (const auto& [c, best] : best_by_criterion(report))
        std::cout << "  " << to_string(c) << "\tm=" << best.m << "\t" << fixed(best.value, 3)
                  << "\n";

    long cells = 0;
    for (const SweepRow& row : report.rows)
        for (const auto& v : row.values) cells += v.has_value() ? 1 : 0;
    const int k = std::min<long>(top, cells);
    const auto tops = top_k(report, k);
    std::cout << "top " << k << ":\n";
    print_tops(std::cout, tops);

    const RangeResult range = range_analysis(tops, report.n);
    std::cout << "range of top m: [" << range.m_low << ", " << range.m_high << "]"
              << "  m_max=" << range.m_max << "  divisors [n/" << fixed(range.low_divisor, 1)
              << ", n/" << fixed(range.high_divisor, 1) << "]\n";

    std::cout << "criterion share:\n";
    for (const auto& [c, share] : criterion_share(tops))
        std::cout << "  " << to_string(c) << "\t" << share.first << "\t"
                  << fixed(share.second, 1) << "%\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Course timetabling via sorted event grouping and rotation search"};
    app.name("egb");
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a seeded random instance");
    GenShape shape;
    std::string gen_out;
    gen->add_option("--events", shape.events, "Event count")->required();
    gen->add_option("--students", shape.students, "Student count")->required();
    gen->add_option("--lecturers", shape.lecturers, "Lecturer count")->required();
    gen->add_option("--rooms", shape.rooms, "Room count")->required();
    gen->add_option("--days", shape.days, "Days in the grid")->capture_default_str();
    gen->add_option("--slots", shape.slots_per_day, "Slots per day")->capture_default_str();
    gen->add_option("--seed", shape.seed, "RNG seed")->required();
    gen->add_option("-o,--output", gen_out, "Instance JSON path")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Run the grouping search for one (m, criterion)");
    std::string solve_instance, solve_sort, solve_out = "timetable.json", solve_trace;
    int solve_m = 0;
    EvalFlagValues solve_eval;
    solve->add_option("--instance", solve_instance, "Instance JSON path")->required();
    solve->add_option("--groups", solve_m, "Group count m")->required();
    solve->add_option("--sort", solve_sort, "Sort criterion: index|weight|number|duration")
        ->required();
    solve->add_option("-o,--output", solve_out, "Timetable JSON path")->capture_default_str();
    solve->add_option("--trace", solve_trace, "Trace CSV path (default: <output>.trace.csv)");
    solve_eval.attach(solve);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Run every (m, criterion) cell and write a report");
    std::string sweep_instance, sweep_sort = "all", sweep_out = "report.csv";
    int m_min = 2, m_max = 0, workers = 0;
    bool prune = false, plots = false;
    double prune_low = 33.3, prune_high = 6.67;
    EvalFlagValues sweep_eval;
    sweep_cmd->add_option("--instance", sweep_instance, "Instance JSON path")->required();
    sweep_cmd->add_option("-o,--output", sweep_out, "Report CSV path")->capture_default_str();
    sweep_cmd->add_option("--m-min", m_min, "Smallest group count")->capture_default_str();
    sweep_cmd->add_option("--m-max", m_max, "Largest group count (0 = floor(n/2))");
    sweep_cmd->add_option("--sort", sweep_sort, "Criteria: all or a comma list")->capture_default_str();
    sweep_cmd->add_flag("--prune", prune, "Restrict m to the divisor-derived range");
    sweep_cmd->add_option("--prune-low", prune_low, "Low divisor for --prune")->capture_default_str();
    sweep_cmd->add_option("--prune-high", prune_high, "High divisor for --prune")->capture_default_str();
    sweep_cmd->add_flag("--plots", plots, "Also write per-criterion m,value series");
    sweep_cmd->add_option("--workers", workers, "Sweep worker threads (0 = auto)");
    sweep_eval.attach(sweep_cmd);

    // report
    auto* report_cmd = app.add_subcommand("report", "Summarize a report CSV");
    std::string report_path;
    int top = 5;
    report_cmd->add_option("--report", report_path, "Report CSV path")->required();
    report_cmd->add_option("--top", top, "How many top results to list")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            const Instance inst = generate_instance(shape);
            for (const Diagnostic& d : validate_instance(inst))
                std::cerr << "warning: " << d.path << ": " << d.message << "\n";
            write_file(gen_out, serialize_instance(inst));
            std::cout << "wrote " << gen_out << " (n=" << inst.n() << ")\n";
            return 0;
        }

        if (solve->parsed()) {
            const Instance inst = parse_instance(read_file(solve_instance));
            const EvalParams params = solve_eval.resolve();
            const Criterion crit = criterion_from_string(solve_sort);
            const RunResult run = egb_run(inst, solve_m, crit, params);
            write_file(solve_out, serialize_timetable(inst, run.best_timetable, run.best_evaluation));
            std::string trace_path = solve_trace;
            if (trace_path.empty())
                trace_path =
                    std::filesystem::path(solve_out).replace_extension("").string() + ".trace.csv";
            write_file(trace_path, trace_csv(run));
            std::cout << "wrote " << solve_out << " and " << trace_path
                      << "  best_eval=" << fixed(run.best_eval, 3)
                      << "  unplaced=" << run.best_evaluation.unplaced << "\n";
            return 0;
        }

        if (sweep_cmd->parsed()) {
            const Instance inst = parse_instance(read_file(sweep_instance));
            const EvalParams params = sweep_eval.resolve();
            const int n = inst.n();
            if (m_max == 0) m_max = max_group_count(n);
            if (m_min < 2 || m_min > m_max || m_max > max_group_count(n)) {
                std::cerr << "error: bad m range [" << m_min << ", " << m_max
                          << "]; valid groups lie in [2, " << max_group_count(n) << "]\n";
                return 1;
            }
            int lo = m_min, hi = m_max;
            if (prune) {
                const auto [plo, phi] = prune_range(n, prune_low, prune_high);
                lo = std::max(lo, plo);
                hi = std::min(hi, phi);
                if (lo > hi) {
                    std::cerr << "warning: pruned range [" << plo << ", " << phi
                              << "] is empty; falling back to [" << m_min << ", " << m_max << "]\n";
                    lo = m_min;
                    hi = m_max;
                }
            }
            std::vector<int> m_set;
            for (int m = lo; m <= hi; ++m) m_set.push_back(m);
            const std::vector<Criterion> criteria = parse_criteria(sweep_sort);

            const SweepReport report = sweep(inst, m_set, criteria, params, workers);
            write_file(sweep_out, emit_report_csv(report));
            if (plots) {
                for (Criterion c : report.criteria) {
                    const std::string path =
                        std::filesystem::path(sweep_out).replace_extension("").string() + "." +
                        to_string(c) + ".csv";
                    write_file(path, emit_plot_series(report, c));
                }
            }
            std::cout << "wrote " << sweep_out << " (" << report.rows.size() << " rows x "
                      << report.criteria.size() << " criteria)\n";
            return 0;
        }

        return do_report(report_path, top);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace egb
