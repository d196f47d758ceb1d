#include "ccstack/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ccstack/central.hpp"
#include "ccstack/errors.hpp"
#include "ccstack/format.hpp"
#include "ccstack/geometry.hpp"
#include "ccstack/solver.hpp"

namespace ccstack {

std::vector<double> grid_points(const Range& range) {
    if (!(range.step > 0.0)) {
        throw std::invalid_argument("grid range requires step > 0");
    }
    if (!(range.lo <= range.hi)) {
        throw std::invalid_argument("grid range requires lo <= hi");
    }
    std::vector<double> points;
    for (std::size_t i = 0;; ++i) {
        const double v = range.lo + static_cast<double>(i) * range.step;
        if (v < range.hi - range.step / 2.0) {
            points.push_back(v);
        } else if (std::abs(v - range.hi) <= range.step / 2.0) {
            points.push_back(v);
            break;
        } else {
            break;
        }
    }
    return points;
}

namespace {

FeasibilityCell evaluate_cell(int n, double r1, double gap,
                              const ScanOptions& options) {
    const double r2 = r1 + gap;
    FeasibilityCell cell;
    cell.r1 = r1;
    cell.r2 = r2;
    if (!(r2 > r1)) {
        // gap below one ulp of r1; nothing to solve at this resolution
        cell.m1 = std::numeric_limits<double>::quiet_NaN();
        cell.m2 = std::numeric_limits<double>::quiet_NaN();
        cell.determinant = std::numeric_limits<double>::quiet_NaN();
        return cell;
    }
    const CoefficientSystem cs = coefficients(n, r1, r2);
    const FeasibilityVerdict verdict = feasible(cs);
    cell.chain_holds = verdict.chain_holds;
    try {
        const MassSolution sol = solve_masses(cs);
        cell.m1 = sol.m1;
        cell.m2 = sol.m2;
        cell.determinant = sol.determinant;
        cell.feasible = sol.feasible;
    } catch (const SingularSystemError& e) {
        cell.m1 = std::numeric_limits<double>::quiet_NaN();
        cell.m2 = std::numeric_limits<double>::quiet_NaN();
        cell.determinant = e.determinant();
        cell.feasible = false;
    }
    if (options.verify && cell.feasible) {
        const Configuration config =
            build_stacked({n, r1, r2, cell.m1, cell.m2});
        cell.residual_check = verify(config, options.verify_tol).report.relative_max;
    }
    return cell;
}

} // namespace

ScanGrid scan(int n, const Range& r1_range, const Range& gap_range,
              const ScanOptions& options) {
    if (n < 2) {
        throw std::invalid_argument("scan requires n >= 2");
    }
    if (!(r1_range.lo > 0.0)) {
        throw std::invalid_argument("scan requires r1 lo > 0");
    }
    if (!(gap_range.lo > 0.0)) {
        throw std::invalid_argument("scan requires gap lo > 0 (r1 == r2 excluded)");
    }
    ScanGrid grid;
    grid.n = n;
    grid.r1_values = grid_points(r1_range);
    grid.gap_values = grid_points(gap_range);
    if (grid.r1_values.empty() || grid.gap_values.empty()) {
        throw std::invalid_argument("scan ranges produce an empty grid");
    }
    const std::size_t total = grid.r1_values.size() * grid.gap_values.size();
    grid.cells.resize(total);

    unsigned threads = options.threads > 0
                           ? static_cast<unsigned>(options.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, total));

    // Each cell is a pure function of (n, r1, gap) written to its own slot,
    // so the grid contents do not depend on the partition.
    auto worker = [&](std::size_t begin, std::size_t end) {
        const std::size_t gaps = grid.gap_values.size();
        for (std::size_t idx = begin; idx < end; ++idx) {
            grid.cells[idx] = evaluate_cell(n, grid.r1_values[idx / gaps],
                                            grid.gap_values[idx % gaps], options);
        }
    };
    if (threads <= 1) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::size_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = static_cast<std::size_t>(t) * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (std::thread& th : pool) th.join();
    }
    return grid;
}

BandEstimate band_summary(const ScanGrid& grid) {
    if (grid.cells.empty()) {
        throw std::invalid_argument("band_summary requires a nonempty grid");
    }
    BandEstimate estimate;
    const std::size_t gaps = grid.gap_values.size();
    for (std::size_t i = 0; i < grid.r1_values.size(); ++i) {
        double max_gap = 0.0;
        bool any = false;
        for (std::size_t j = 0; j < gaps; ++j) {
            if (grid.cells[i * gaps + j].feasible) {
                any = true;
                max_gap = grid.gap_values[j];
            }
        }
        if (any) {
            if (estimate.empty) {
                estimate.delta_hat = grid.r1_values[i];
                estimate.empty = false;
            }
            estimate.per_r1_max_gap.emplace_back(grid.r1_values[i], max_gap);
        }
    }
    return estimate;
}

void export_csv(const ScanGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << "n,r1,r2,M1,M2,det,feasible,chain,residual\n";
    for (const FeasibilityCell& cell : grid.cells) {
        out << grid.n << ',' << serialize_double(cell.r1) << ','
            << serialize_double(cell.r2) << ',' << serialize_double(cell.m1)
            << ',' << serialize_double(cell.m2) << ','
            << serialize_double(cell.determinant) << ','
            << (cell.feasible ? '1' : '0') << ','
            << (cell.chain_holds ? '1' : '0') << ',';
        if (cell.residual_check) {
            out << serialize_double(*cell.residual_check);
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double_field(const std::string& field, const std::string& path) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw std::runtime_error("bad numeric field \"" + field + "\" in " + path);
    }
    return value;
}

} // namespace

ScanGrid import_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line != "n,r1,r2,M1,M2,det,feasible,chain,residual") {
        throw std::runtime_error("unexpected CSV header in " + path);
    }
    ScanGrid grid;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 9) {
            throw std::runtime_error("expected 9 CSV fields in " + path);
        }
        FeasibilityCell cell;
        grid.n = static_cast<int>(parse_double_field(fields[0], path));
        cell.r1 = parse_double_field(fields[1], path);
        cell.r2 = parse_double_field(fields[2], path);
        cell.m1 = parse_double_field(fields[3], path);
        cell.m2 = parse_double_field(fields[4], path);
        cell.determinant = parse_double_field(fields[5], path);
        cell.feasible = fields[6] == "1";
        cell.chain_holds = fields[7] == "1";
        if (!fields[8].empty()) {
            cell.residual_check = parse_double_field(fields[8], path);
        }
        grid.cells.push_back(cell);
    }
    // Reconstruct the axes: rows are grouped by r1 with a full gap block each.
    for (const FeasibilityCell& cell : grid.cells) {
        if (grid.r1_values.empty() || grid.r1_values.back() != cell.r1) {
            if (!grid.r1_values.empty() && cell.r1 == grid.r1_values.front()) {
                throw std::runtime_error("non-grid CSV layout in " + path);
            }
            grid.r1_values.push_back(cell.r1);
        }
    }
    const std::size_t rows = grid.r1_values.size();
    if (rows == 0 || grid.cells.size() % rows != 0) {
        throw std::runtime_error("non-grid CSV layout in " + path);
    }
    const std::size_t gaps = grid.cells.size() / rows;
    grid.gap_values.reserve(gaps);
    for (std::size_t j = 0; j < gaps; ++j) {
        grid.gap_values.push_back(grid.cells[j].r2 - grid.cells[j].r1);
    }
    return grid;
}

} // namespace ccstack
