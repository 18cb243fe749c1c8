#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>

#include "doctest.h"
#include "extsum/errors.hpp"
#include "extsum/problems.hpp"
#include "extsum/splitting.hpp"
#include "extsum/trace_io.hpp"

using namespace extsum;

namespace {

ConvergenceTrace sample_trace(long iters = 30) {
    auto config = AlgorithmConfig(StepSchedule::power(1.0, 1.0, 1.0 / 3.0));
    config.max_iter = iters;
    config.strategy = SelectionStrategy::random(7);
    return run_efb(builtin("quad-halfspace").spec, config);
}

bool meta_equal(const TraceMeta& a, const TraceMeta& b) {
    return a.problem_id == b.problem_id && a.algorithm == b.algorithm &&
           a.schedule_kind == b.schedule_kind &&
           bit_equal(Point{a.schedule_c, a.schedule_p, a.schedule_q},
                     Point{b.schedule_c, b.schedule_p, b.schedule_q}) &&
           a.strategy == b.strategy && a.seed == b.seed && a.max_iter == b.max_iter &&
           a.record_every == b.record_every && a.dimension == b.dimension &&
           a.schedule_valid == b.schedule_valid &&
           a.schedule_override == b.schedule_override &&
           bit_equal(Point{a.h1_running_sup}, Point{b.h1_running_sup}) &&
           a.error == b.error;
}

bool rows_equal(const ConvergenceTrace& a, const ConvergenceTrace& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& ra = a.rows[i];
        const auto& rb = b.rows[i];
        if (ra.n != rb.n) return false;
        if (!bit_equal(Point{ra.lambda, ra.eps, ra.eps_u_norm},
                       Point{rb.lambda, rb.eps, rb.eps_u_norm})) {
            return false;
        }
        if (!bit_equal(ra.x, rb.x) || !bit_equal(ra.xbar, rb.xbar)) return false;
        if (ra.dist_to_solution.has_value() != rb.dist_to_solution.has_value()) return false;
        if (ra.dist_to_solution &&
            !bit_equal(Point{*ra.dist_to_solution}, Point{*rb.dist_to_solution})) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("doubles are formatted to round-trip exactly") {
    const double values[] = {0.1,    1.0 / 3.0,          -0.0,   1e-300,
                             0.25,   6.02214076e23,      -1.5e-8, 12345.6789,
                             0.9999999999999999, 5e-324};
    for (double v : values) {
        const std::string s = format_double(v);
        double parsed = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
        REQUIRE(ec == std::errc());
        REQUIRE(ptr == s.data() + s.size());
        CHECK(bit_equal(Point{parsed}, Point{v}));
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv round trip is bit exact") {
    const auto trace = sample_trace();
    std::ostringstream out;
    write_trace_csv(trace, out);
    std::istringstream in(out.str());
    const auto back = read_trace_csv(in);
    CHECK(meta_equal(trace.meta, back.meta));
    CHECK(rows_equal(trace, back));
}

TEST_CASE("json round trip is bit exact") {
    const auto trace = sample_trace();
    std::ostringstream out;
    write_trace_json(trace, out);
    std::istringstream in(out.str());
    const auto back = read_trace_json(in);
    CHECK(meta_equal(trace.meta, back.meta));
    CHECK(rows_equal(trace, back));
}

TEST_CASE("file io sniffs the format from the content") {
    const auto trace = sample_trace(10);
    const std::string csv_path = "trace_roundtrip_test.csv";
    const std::string json_path = "trace_roundtrip_test.out";

    write_trace_file(trace, csv_path, "csv");
    write_trace_file(trace, json_path, "json"); // extension intentionally neutral
    const auto from_csv = read_trace_file(csv_path);
    const auto from_json = read_trace_file(json_path);
    CHECK(rows_equal(trace, from_csv));
    CHECK(rows_equal(trace, from_json));
    CHECK(meta_equal(from_csv.meta, from_json.meta));
    std::remove(csv_path.c_str());
    std::remove(json_path.c_str());

    CHECK_THROWS_AS(write_trace_file(trace, "x.bin", "parquet"), std::invalid_argument);
    CHECK_THROWS_AS(read_trace_file("does_not_exist.csv"), Error);
}

TEST_CASE("missing solution distances survive the round trip") {
    // Ad-hoc problem without a known solution set: the distance column stays
    // empty rather than inventing zeros.
    ProblemSpec problem(ConvexFunctionOracle::indicator(ConvexSet::box(Point{0.0}, Point{1.0})),
                        ConvexFunctionOracle::quadratic(Point{3.0}), Point{0.5});
    auto config = AlgorithmConfig(StepSchedule::power(1.0, 1.0, 1.0 / 3.0));
    config.max_iter = 5;
    const auto trace = run_efb(problem, config);
    REQUIRE(!trace.rows.empty());
    CHECK_FALSE(trace.rows.front().dist_to_solution.has_value());

    std::ostringstream out;
    write_trace_csv(trace, out);
    std::istringstream in(out.str());
    const auto back = read_trace_csv(in);
    CHECK(rows_equal(trace, back));
}

TEST_CASE("malformed traces are rejected") {
    const auto trace = sample_trace(5);
    std::ostringstream out;
    write_trace_csv(trace, out);
    const std::string good = out.str();

    SUBCASE("missing column header") {
        std::string text;
        std::istringstream lines(good);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.rfind("n,lambda", 0) == 0) continue;
            text += line + "\n";
        }
        std::istringstream in(text);
        CHECK_THROWS_AS(read_trace_csv(in), TraceFormatError);
    }
    SUBCASE("wrong field count") {
        std::istringstream in(good + "6,0.5\n");
        CHECK_THROWS_AS(read_trace_csv(in), TraceFormatError);
    }
    SUBCASE("non-increasing indices") {
        std::string text = good;
        text += text.substr(text.rfind("\n5,") + 1); // repeat the last row
        std::istringstream in(text);
        CHECK_THROWS_AS(read_trace_csv(in), TraceFormatError);
    }
    SUBCASE("unparsable number") {
        std::istringstream in(good + "6,zero,1,1,1,0,\n");
        CHECK_THROWS_AS(read_trace_csv(in), TraceFormatError);
    }
    SUBCASE("broken json") {
        std::istringstream in("{\"meta\": {}");
        CHECK_THROWS_AS(read_trace_json(in), TraceFormatError);
    }
}
