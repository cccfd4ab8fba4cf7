#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "egb/harness.hpp"
#include "egb/search.hpp"
#include "test_util.hpp"

using namespace egb;

namespace {

std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("EGB_FIXTURES");
    return std::string(dir ? dir : "fixtures") + "/" + name;
}

std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SweepReport load_fixture(const std::string& name) {
    return parse_report_csv(read_fixture(name), name);
}

}  // namespace

TEST_CASE("generate_instance produces the requested cardinalities") {
    const Instance inst = generate_instance({90, 175, 29, 18, 5, 8, 42});
    CHECK(inst.n() == 90);
    CHECK(inst.students.size() == 175);
    CHECK(inst.lecturers.size() == 29);
    CHECK(inst.rooms.size() == 18);
    CHECK(inst.grid.days == 5);
    CHECK(inst.grid.slots_per_day == 8);
    CHECK(validate_instance(inst).empty());
    for (const Event& e : inst.events) {
        CHECK(e.duration >= 1);
        CHECK(e.duration <= 3);
        CHECK(e.weight > 0.5);
        CHECK(e.weight < 2.0);
        CHECK(e.students.size() >= 3);
    }
}

TEST_CASE("generate_instance is deterministic per seed") {
    const GenShape shape{20, 30, 5, 4, 5, 8, 77};
    CHECK(serialize_instance(generate_instance(shape)) ==
          serialize_instance(generate_instance(shape)));
    GenShape other = shape;
    other.seed = 78;
    CHECK(serialize_instance(generate_instance(shape)) !=
          serialize_instance(generate_instance(other)));
}

TEST_CASE("generate_instance covers the minimal shape") {
    const Instance inst = generate_instance({4, 2, 1, 1, 1, 4, 0});
    CHECK(inst.n() == 4);
    CHECK(validate_instance(inst).empty());
}

TEST_CASE("generate_instance rejects impossible shapes") {
    CHECK_THROWS_AS(generate_instance({3, 2, 1, 1, 1, 4, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance({4, 0, 1, 1, 1, 4, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance({4, 2, 1, 0, 1, 4, 0}), std::invalid_argument);
}

TEST_CASE("sweep covers requested cells and matches re-executed runs") {
    const Instance inst = test::random_instance(12, 9);
    const SweepReport r = sweep(inst, {3}, {kAllCriteria, kAllCriteria + 4}, {});
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].m == 3);
    CHECK(r.criteria.size() == 4);
    for (Criterion c : kAllCriteria) {
        REQUIRE(r.rows[0].values[static_cast<int>(c)].has_value());
        CHECK(*r.rows[0].values[static_cast<int>(c)] == egb_run(inst, 3, c, {}).best_eval);
    }
}

TEST_CASE("sweep signatures follow the partition rule") {
    const Instance inst = test::random_instance(11, 4);
    const SweepReport r = sweep(inst, full_m_range(11), {Criterion::Index}, {});
    REQUIRE(r.rows.size() == 4);  // m = 2..5
    CHECK(r.rows[0].signature == "1x6; 1x5");
    CHECK(r.rows[1].signature == "2x4; 1x3");
    CHECK(r.rows[2].signature == "3x3; 1x2");
    CHECK(r.rows[3].signature == "1x3; 4x2");
}

TEST_CASE("sweep is deterministic regardless of worker count") {
    const Instance inst = test::random_instance(10, 14);
    const SweepReport serial = sweep(inst, full_m_range(10), {kAllCriteria, kAllCriteria + 4}, {}, 1);
    const SweepReport parallel =
        sweep(inst, full_m_range(10), {kAllCriteria, kAllCriteria + 4}, {}, 4);
    CHECK(emit_report_csv(serial) == emit_report_csv(parallel));
}

TEST_CASE("sweep validates its m set") {
    const Instance inst = test::random_instance(10, 1);
    CHECK_THROWS_AS(sweep(inst, {6}, {Criterion::Index}, {}), std::out_of_range);
    CHECK_THROWS_AS(sweep(inst, {1}, {Criterion::Index}, {}), std::out_of_range);
    CHECK_THROWS_AS(sweep(inst, {}, {Criterion::Index}, {}), std::invalid_argument);
}

TEST_CASE("best_by_criterion reproduces the reference minima") {
    const auto best2 = best_by_criterion(load_fixture("table2.csv"));
    CHECK(best2.at(Criterion::Index) == TopResult{Criterion::Index, 9, 7.018});
    CHECK(best2.at(Criterion::Weight) == TopResult{Criterion::Weight, 3, 6.530});
    CHECK(best2.at(Criterion::Number) == TopResult{Criterion::Number, 13, 6.759});
    CHECK(best2.at(Criterion::Duration) == TopResult{Criterion::Duration, 2, 6.967});

    const auto best4 = best_by_criterion(load_fixture("table4.csv"));
    CHECK(best4.at(Criterion::Index) == TopResult{Criterion::Index, 7, 10.070});
    CHECK(best4.at(Criterion::Weight) == TopResult{Criterion::Weight, 8, 9.158});
    CHECK(best4.at(Criterion::Number) == TopResult{Criterion::Number, 12, 10.239});
    CHECK(best4.at(Criterion::Duration) == TopResult{Criterion::Duration, 12, 8.958});
}

TEST_CASE("best_by_criterion of a single-row report returns that row") {
    SweepReport r = load_fixture("table2.csv");
    r.rows.resize(1);
    const auto best = best_by_criterion(r);
    for (Criterion c : kAllCriteria) {
        CHECK(best.at(c).m == 2);
        CHECK(best.at(c).value == *r.rows[0].values[static_cast<int>(c)]);
    }
}

TEST_CASE("top_k picks the smallest cells with m then criterion tie-breaks") {
    const auto tops2 = top_k(load_fixture("table2.csv"), 5);
    const std::vector<TopResult> expect2{{Criterion::Weight, 3, 6.530},
                                         {Criterion::Weight, 6, 6.597},
                                         {Criterion::Number, 13, 6.759},
                                         {Criterion::Number, 14, 6.787},
                                         {Criterion::Weight, 5, 6.817}};
    CHECK(tops2 == expect2);

    const auto tops6 = top_k(load_fixture("table6.csv"), 5);
    const std::vector<TopResult> expect6{{Criterion::Duration, 13, 20.978},
                                         {Criterion::Duration, 8, 21.655},
                                         {Criterion::Duration, 15, 21.672},
                                         {Criterion::Duration, 14, 21.707},
                                         {Criterion::Duration, 7, 21.745}};
    CHECK(tops6 == expect6);

    CHECK(top_k(load_fixture("table2.csv"), 1) ==
          std::vector<TopResult>{{Criterion::Weight, 3, 6.530}});
    CHECK_THROWS_AS(top_k(load_fixture("table2.csv"), 44 * 4 + 1), std::out_of_range);
    CHECK_THROWS_AS(top_k(load_fixture("table2.csv"), 0), std::invalid_argument);
}

TEST_CASE("range_analysis reproduces the reference ranges and divisors") {
    const RangeResult r90 = range_analysis(top_k(load_fixture("table2.csv"), 5), 90);
    CHECK(r90.m_low == 3);
    CHECK(r90.m_high == 14);
    CHECK(r90.m_max == 45);
    CHECK(r90.low_divisor == 15.0);
    CHECK(r90.high_divisor == 3.2);

    const RangeResult r130 = range_analysis(top_k(load_fixture("table4.csv"), 5), 130);
    CHECK(r130.m_low == 8);
    CHECK(r130.m_high == 20);
    CHECK(r130.m_max == 65);
    CHECK(r130.low_divisor == 8.1);
    CHECK(r130.high_divisor == 3.3);  // 65/20 = 3.25, half-up at one decimal

    const RangeResult r273 = range_analysis(top_k(load_fixture("table6.csv"), 5), 273);
    CHECK(r273.m_low == 7);
    CHECK(r273.m_high == 15);
    CHECK(r273.m_max == 136);
    CHECK(r273.low_divisor == 19.4);
    CHECK(r273.high_divisor == 9.1);
}

TEST_CASE("criterion_share counts the combined reference top results") {
    std::vector<TopResult> all;
    for (const char* name : {"table2.csv", "table4.csv", "table6.csv"})
        for (const TopResult& t : top_k(load_fixture(name), 5)) all.push_back(t);
    REQUIRE(all.size() == 15);
    const auto share = criterion_share(all);
    CHECK(share.at(Criterion::Duration) == std::pair<int, double>{8, 53.3});
    CHECK(share.at(Criterion::Weight) == std::pair<int, double>{5, 33.3});
    CHECK(share.at(Criterion::Number) == std::pair<int, double>{2, 13.3});
    CHECK(share.at(Criterion::Index) == std::pair<int, double>{0, 0.0});

    const auto single = criterion_share({{Criterion::Weight, 3, 6.530}});
    CHECK(single.at(Criterion::Weight) == std::pair<int, double>{1, 100.0});
    CHECK(single.at(Criterion::Index) == std::pair<int, double>{0, 0.0});
}

TEST_CASE("prune_range keeps the documented defaults") {
    CHECK(prune_range(90) == std::pair<int, int>{3, 13});
    CHECK(prune_range(273) == std::pair<int, int>{9, 40});
    const auto empty = prune_range(8);
    CHECK(empty.first > empty.second);  // callers fall back to the full range
    CHECK_THROWS_AS(prune_range(90, 6.67, 33.3), std::invalid_argument);
    CHECK_THROWS_AS(prune_range(90, 33.3, 0.0), std::invalid_argument);
}

TEST_CASE("report CSV round-trips the fixtures byte-exactly") {
    for (const char* name : {"table2.csv", "table4.csv", "table6.csv"}) {
        CAPTURE(name);
        const std::string text = read_fixture(name);
        const SweepReport report = parse_report_csv(text, name);
        CHECK(emit_report_csv(report) == text);
    }
}

TEST_CASE("fixture signatures agree with partition") {
    const SweepReport report = load_fixture("table2.csv");
    CHECK(report.n == 90);
    for (const SweepRow& row : report.rows)
        CHECK(row.signature == signature(partition(90, row.m)));
}

TEST_CASE("emit_report_csv writes one line per row plus the header") {
    SweepReport r;
    r.n = 90;
    r.m_values = {3};
    r.criteria.assign(kAllCriteria, kAllCriteria + 4);
    SweepRow row;
    row.m = 3;
    row.signature = "3x30";
    row.values = {1.0, 2.0, 3.0, 4.5};
    r.rows.push_back(row);
    CHECK(emit_report_csv(r) == "m,groups,index,weight,number,duration\n"
                                "3,\"3x30\",1.000,2.000,3.000,4.500\n");
}

TEST_CASE("parse_report_csv rejects malformed documents") {
    CHECK_THROWS_AS(parse_report_csv(""), ParseError);
    CHECK_THROWS_AS(parse_report_csv("wrong,header\n"), ParseError);
    CHECK_THROWS_AS(parse_report_csv("m,groups,index,weight,number,duration\n3,\"3x30\",1.0\n"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_report_csv("m,groups,index,weight,number,duration\nx,\"3x30\",1,1,1,1\n"),
        ParseError);
    // inconsistent implied n across rows
    CHECK_THROWS_AS(parse_report_csv("m,groups,index,weight,number,duration\n"
                                     "2,\"2x45\",1,1,1,1\n3,\"3x31\",1,1,1,1\n"),
                    ParseError);
}

TEST_CASE("emit_plot_series lists m,value pairs for one criterion") {
    const SweepReport report = load_fixture("table2.csv");
    const std::string series = emit_plot_series(report, Criterion::Weight);
    std::istringstream in(series);
    std::string line;
    std::getline(in, line);
    CHECK(line == "m,value");
    int rows = 0;
    double best = 1e9;
    std::string best_line;
    while (std::getline(in, line)) {
        ++rows;
        const double v = std::stod(line.substr(line.find(',') + 1));
        if (v < best) {
            best = v;
            best_line = line;
        }
    }
    CHECK(rows == static_cast<int>(report.m_values.size()));
    CHECK(best_line == "3,6.530");

    SweepReport narrow = report;
    narrow.criteria = {Criterion::Weight};
    CHECK_THROWS_AS(emit_plot_series(narrow, Criterion::Index), std::invalid_argument);
}

TEST_CASE("round_half_up_1dp rounds ties upward") {
    CHECK(round_half_up_1dp(3.25) == 3.3);
    CHECK(round_half_up_1dp(8.125) == 8.1);
    CHECK(round_half_up_1dp(53.3333) == 53.3);
    CHECK(round_half_up_1dp(15.0) == 15.0);
}
