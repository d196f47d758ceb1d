#include <doctest.h>

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ccstack/ccstack.hpp"

using namespace ccstack;

namespace {

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool cells_identical(const ScanGrid& a, const ScanGrid& b) {
    if (a.n != b.n || a.cells.size() != b.cells.size()) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        const FeasibilityCell& x = a.cells[i];
        const FeasibilityCell& y = b.cells[i];
        if (!same_bits(x.r1, y.r1) || !same_bits(x.r2, y.r2) ||
            !same_bits(x.m1, y.m1) || !same_bits(x.m2, y.m2) ||
            !same_bits(x.determinant, y.determinant) ||
            x.feasible != y.feasible || x.chain_holds != y.chain_holds ||
            x.residual_check.has_value() != y.residual_check.has_value()) {
            return false;
        }
        if (x.residual_check &&
            !same_bits(*x.residual_check, *y.residual_check)) {
            return false;
        }
    }
    return true;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ccstack_scan_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("grid point convention") {
    const auto r1 = grid_points({1.0, 6.0, 0.05});
    REQUIRE(r1.size() == 101);
    CHECK(r1.front() == 1.0);
    CHECK(r1.back() == 6.0);

    const auto gaps = grid_points({0.01, 1.0, 0.01});
    REQUIRE(gaps.size() == 100);
    CHECK(gaps.front() == 0.01);
    CHECK(gaps.back() == doctest::Approx(1.0).epsilon(1e-14));

    // single point
    const auto one = grid_points({2.0, 2.0, 0.1});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 2.0);

    // the final candidate counts as the endpoint when within step/2
    const auto within = grid_points({1.0, 1.12, 0.05});
    REQUIRE(within.size() == 3);
    CHECK(within.back() == doctest::Approx(1.1));
    const auto beyond = grid_points({1.0, 1.13, 0.05});
    REQUIRE(beyond.size() == 4);
    CHECK(beyond.back() == doctest::Approx(1.15));

    CHECK_THROWS_AS(grid_points({1.0, 2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(grid_points({1.0, 2.0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(grid_points({2.0, 1.0, 0.1}), std::invalid_argument);
}

TEST_CASE("scan layout matches per-cell recomputation") {
    const ScanGrid grid = scan(4, {1.0, 1.3, 0.1}, {0.2, 0.5, 0.1});
    REQUIRE(grid.r1_values.size() == 4);
    REQUIRE(grid.gap_values.size() == 4);
    REQUIRE(grid.cells.size() == 16);

    for (std::size_t i = 0; i < grid.r1_values.size(); ++i) {
        for (std::size_t j = 0; j < grid.gap_values.size(); ++j) {
            const FeasibilityCell& cell = grid.cell(i, j);
            CHECK(cell.r1 == grid.r1_values[i]);
            CHECK(cell.r2 == grid.r1_values[i] + grid.gap_values[j]);
            const MassSolution sol =
                solve_masses(coefficients(4, cell.r1, cell.r2));
            CHECK(same_bits(cell.m1, sol.m1));
            CHECK(same_bits(cell.m2, sol.m2));
            CHECK(same_bits(cell.determinant, sol.determinant));
            CHECK(cell.feasible == sol.feasible);
        }
    }
}

TEST_CASE("scan argument validation") {
    CHECK_THROWS_AS(scan(1, {1.0, 2.0, 0.5}, {0.1, 0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(scan(4, {0.0, 2.0, 0.5}, {0.1, 0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(scan(4, {1.0, 2.0, 0.5}, {0.0, 0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(scan(4, {2.0, 1.0, 0.5}, {0.1, 0.5, 0.1}), std::invalid_argument);
}

TEST_CASE("scan results do not depend on the thread count") {
    const Range r1_range{1.0, 1.4, 0.05};
    const Range gap_range{0.2, 0.7, 0.05};
    ScanOptions options;
    options.verify = true;
    options.threads = 1;
    const ScanGrid serial = scan(4, r1_range, gap_range, options);
    for (const int threads : {2, 3, 8}) {
        options.threads = threads;
        CHECK(cells_identical(serial, scan(4, r1_range, gap_range, options)));
    }
}

TEST_CASE("feasible cells survive end-to-end verification") {
    ScanOptions options;
    options.verify = true;
    const ScanGrid grid = scan(4, {1.0, 1.3, 0.05}, {0.25, 0.75, 0.025}, options);
    std::size_t feasible_count = 0;
    for (const FeasibilityCell& cell : grid.cells) {
        if (!cell.feasible) {
            CHECK_FALSE(cell.residual_check.has_value());
            continue;
        }
        ++feasible_count;
        REQUIRE(cell.residual_check.has_value());
        CHECK(*cell.residual_check <= 1e-10);
    }
    CHECK(feasible_count > 0);

    // with verification off, spot-check the same cells by hand
    options.verify = false;
    const ScanGrid bare = scan(4, {1.0, 1.3, 0.05}, {0.25, 0.75, 0.025}, options);
    std::mt19937_64 rng(43);
    std::vector<const FeasibilityCell*> feasible_cells;
    for (const FeasibilityCell& cell : bare.cells) {
        if (cell.feasible) feasible_cells.push_back(&cell);
    }
    std::shuffle(feasible_cells.begin(), feasible_cells.end(), rng);
    const std::size_t sample =
        std::min<std::size_t>(feasible_cells.size(), 100);
    for (std::size_t i = 0; i < sample; ++i) {
        const FeasibilityCell& cell = *feasible_cells[i];
        const Configuration config =
            build_stacked({4, cell.r1, cell.r2, cell.m1, cell.m2});
        CHECK(verify(config, 1e-10).is_cc);
    }
}

TEST_CASE("band summary") {
    ScanOptions options;
    const ScanGrid grid = scan(4, {1.0, 1.4, 0.05}, {0.2, 0.8, 0.05}, options);
    const BandEstimate band = band_summary(grid);
    REQUIRE_FALSE(band.empty);
    CHECK(band.delta_hat == 1.0);
    for (const auto& [r1, max_gap] : band.per_r1_max_gap) {
        CHECK(max_gap <= 0.8 + 1e-12);
        bool found = false;
        for (const double v : grid.r1_values) found = found || v == r1;
        CHECK(found);
    }

    const ScanGrid empty_grid = scan(4, {5.0, 5.2, 0.1}, {2.0, 3.0, 0.5});
    const BandEstimate empty_band = band_summary(empty_grid);
    CHECK(empty_band.empty);
    CHECK(empty_band.per_r1_max_gap.empty());

    CHECK_THROWS_AS(band_summary(ScanGrid{}), std::invalid_argument);
}

TEST_CASE("csv export and import round trip") {
    TempDir tmp;
    const std::string path = (tmp.path / "grid.csv").string();

    ScanOptions options;
    options.verify = true;
    const ScanGrid grid = scan(5, {1.0, 1.2, 0.05}, {0.2, 0.6, 0.05}, options);
    export_csv(grid, path);

    const std::string text = read_file(path);
    CHECK(text.rfind("n,r1,r2,M1,M2,det,feasible,chain,residual\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);

    const ScanGrid back = import_csv(path);
    CHECK(back.n == grid.n);
    CHECK(back.r1_values.size() == grid.r1_values.size());
    CHECK(back.gap_values.size() == grid.gap_values.size());
    CHECK(cells_identical(grid, back));

    // re-export reproduces the file byte for byte
    const std::string second = (tmp.path / "grid2.csv").string();
    export_csv(grid, second);
    CHECK(read_file(second) == text);
    const std::string third = (tmp.path / "grid3.csv").string();
    export_csv(back, third);
    CHECK(read_file(third) == text);
}

TEST_CASE("csv import validates structure") {
    TempDir tmp;
    const std::string path = (tmp.path / "bad.csv").string();
    {
        std::ofstream out(path);
        out << "wrong,header\n";
    }
    CHECK_THROWS_AS(import_csv(path), std::runtime_error);
    {
        std::ofstream out(path);
        out << "n,r1,r2,M1,M2,det,feasible,chain,residual\n";
        out << "4,1,1.2,nope,0,1,0,0,\n";
    }
    CHECK_THROWS_AS(import_csv(path), std::runtime_error);
    CHECK_THROWS_AS(import_csv((tmp.path / "missing.csv").string()),
                    std::runtime_error);
}

TEST_CASE("single cell grid exports a two-line file") {
    TempDir tmp;
    const std::string path = (tmp.path / "one.csv").string();
    const ScanGrid grid = scan(4, {1.0, 1.0, 0.1}, {0.3, 0.3, 0.1});
    REQUIRE(grid.cells.size() == 1);
    export_csv(grid, path);
    const std::string text = read_file(path);
    std::size_t lines = 0;
    for (const char ch : text) lines += ch == '\n';
    CHECK(lines == 2);
}

TEST_CASE("sub-ulp gaps produce inert NaN cells that still round trip") {
    // 1 + 1e-18 rounds back to 1: the cell cannot be solved at double
    // resolution and must come back infeasible instead of crashing a worker
    const ScanGrid grid = scan(4, {1.0, 1.0, 0.1}, {1e-18, 1e-18, 1e-18});
    REQUIRE(grid.cells.size() == 1);
    CHECK_FALSE(grid.cells[0].feasible);
    CHECK(std::isnan(grid.cells[0].m1));
    CHECK(std::isnan(grid.cells[0].determinant));

    TempDir tmp;
    const std::string path = (tmp.path / "nan.csv").string();
    export_csv(grid, path);
    const ScanGrid back = import_csv(path);
    CHECK(cells_identical(grid, back));
}

TEST_CASE("ratio diagnostics drift monotonically at large r1") {
    // |b1/b2 - 1| shrinks with r1 along a thin fixed gap.
    double previous = std::numeric_limits<double>::infinity();
    for (double r1 = 5.0; r1 <= 6.01; r1 += 0.25) {
        const CoefficientSystem cs = coefficients(4, r1, r1 + 0.1);
        const double value = std::abs(cs.b1 / cs.b2 - 1.0);
        CHECK(value <= previous + 1e-15);
        previous = value;
    }
}
