#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "compact3d/harness.hpp"

using namespace compact3d;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int count_lines(const std::string& s) { return int(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("grid parsing and labels") {
    CHECK(parse_grid("125").label() == "125^3");
    const GridSize g = parse_grid("64,32,16");
    CHECK(g.n_x == 64);
    CHECK(g.n_z == 16);
    CHECK(g.label() == "64x32x16");
    CHECK_THROWS_AS(parse_grid("0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("4,4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("4x"), std::invalid_argument);
}

TEST_CASE("observed order uses true step sizes") {
    CHECK(observed_order(4.0, 1.0, 0.2, 0.1) == doctest::Approx(2.0));
    const double h1 = 1.0 / 126, h2 = 1.0 / 251;
    CHECK(observed_order(std::pow(h1, 4), std::pow(h2, 4), h1, h2) == doctest::Approx(4.0));
}

TEST_CASE("table output") {
    const auto dir = std::filesystem::temp_directory_path() / "compact3d_harness_test";
    std::filesystem::create_directories(dir);

    emit_table({}, TableFormat::Csv, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") ==
          "scheme,grid,max_err,l2_err,l2_res,setup_s,transform_s,exchange_s,tridiag_s,total_s\n");

    MetricsRow r;
    r.scheme = "4";
    r.grid = "125^3";
    r.max_err = 3.4493268e-05;
    r.l2_err = 1.0 / 3.0;
    r.times.total = 1.25;
    emit_table({r}, TableFormat::Csv, dir / "one.csv");
    const std::string csv = slurp(dir / "one.csv");
    CHECK(count_lines(csv) == 2);
    CHECK(csv.find("4,125^3,3.4493268e-05,3.3333333e-01,0.0000000e+00,0,0,0,0,1.25\n") !=
          std::string::npos);

    emit_table({r, r}, TableFormat::Markdown, dir / "t.md");
    const std::string md = slurp(dir / "t.md");
    CHECK(count_lines(md) == 4);
    CHECK(md.rfind("| scheme | grid |", 0) == 0);
    CHECK(md.find("| --- |") != std::string::npos);

    CHECK_THROWS_AS(emit_table({r}, TableFormat::Csv, dir / "missing" / "x.csv"),
                    std::runtime_error);
    CHECK(parse_format("md") == TableFormat::Markdown);
    CHECK_THROWS_AS(parse_format("json"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("single grid convergence run has no order estimate") {
    const auto r = run_convergence(SchemeKind::FourthOrder, "variable-k", {{16, 16, 16}},
                                   SolverConfig::sequential());
    REQUIRE(r.rows.size() == 1);
    CHECK(r.max_err_orders.empty());
    CHECK_FALSE(r.rows[0].failed);
    CHECK(r.rows[0].l2_res < 1e-10);
}

TEST_CASE("convergence rows and orders") {
    const auto r = run_convergence(SchemeKind::FourthOrder, "variable-k",
                                   {{31, 31, 31}, {63, 63, 63}}, SolverConfig::sequential());
    REQUIRE(r.max_err_orders.size() == 1);
    REQUIRE(r.max_err_orders[0].has_value());
    CHECK(*r.max_err_orders[0] > 3.5);
    CHECK_THROWS_AS(run_convergence(SchemeKind::FourthOrder, "variable-k", {{8, 8, 8}, {4, 4, 4}},
                                    SolverConfig::sequential()),
                    std::invalid_argument);
}

TEST_CASE("failed rows are marked and do not stop the study") {
    // Nine parts cannot split eight planes.
    const auto r = run_convergence(SchemeKind::SecondOrder, "variable-k", {{8, 8, 8}, {8, 8, 9}},
                                   SolverConfig::partitioned(9, 1));
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].failed);
    CHECK_FALSE(r.rows[0].error.empty());
    CHECK_FALSE(r.rows[1].failed);
    CHECK_FALSE(r.max_err_orders[0].has_value());
}

TEST_CASE("scaling rows share one solution") {
    const auto rows = run_scaling(SchemeKind::SecondOrder, "const-k", {24, 24, 24},
                                  {SolverConfig::shared(1), SolverConfig::shared(2),
                                   SolverConfig::partitioned(2, 2)});
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].max_err == rows[0].max_err);
    CHECK(rows[2].config == "partitioned(p=2,w=2,plane)");

    const auto single = run_scaling(SchemeKind::SecondOrder, "const-k", {8, 8, 8},
                                    {SolverConfig::shared(1)});
    CHECK(single.size() == 1);
    CHECK_THROWS_AS(run_scaling(SchemeKind::SecondOrder, "const-k", {8, 8, 8},
                                {SolverConfig::shared(9)}),
                    std::invalid_argument);
}
