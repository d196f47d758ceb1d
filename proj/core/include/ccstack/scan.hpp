#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccstack {

/// Closed-below grid range [lo, hi) with the final point included when it
/// lands within step/2 of hi.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
};

struct ScanOptions {
    /// Verify every feasible cell end-to-end and record its relative
    /// residual.
    bool verify = false;
    /// Worker threads; 0 = one per available core. Results are identical
    /// for any value.
    int threads = 0;
    double verify_tol = 1e-10;
};

struct FeasibilityCell {
    double r1 = 0.0;
    double r2 = 0.0;
    double m1 = 0.0; ///< NaN when the system was near-singular
    double m2 = 0.0;
    double determinant = 0.0;
    bool feasible = false;
    bool chain_holds = false;
    std::optional<double> residual_check; ///< relative residual when verified
};

/// Dense (r1, gap) lattice, row-major with r1 as the slow index.
struct ScanGrid {
    int n = 0;
    std::vector<double> r1_values;
    std::vector<double> gap_values;
    std::vector<FeasibilityCell> cells;

    const FeasibilityCell& cell(std::size_t r1_index, std::size_t gap_index) const {
        return cells[r1_index * gap_values.size() + gap_index];
    }
};

/// Empirical summary of the positive-mass band.
struct BandEstimate {
    double delta_hat = 0.0; ///< smallest r1 with any feasible gap
    std::vector<std::pair<double, double>> per_r1_max_gap; ///< (r1, largest feasible gap)
    bool empty = true;
};

/// Grid points lo + i*step per the range convention above.
std::vector<double> grid_points(const Range& range);

/// Classify every (r1, r1 + gap) cell by solving the axis masses.
/// Near-singular cells are marked infeasible with the determinant recorded
/// and NaN masses. Cells are pure functions of their parameters, evaluated
/// into pre-assigned slots, so the grid is bit-identical for any thread
/// count.
ScanGrid scan(int n, const Range& r1_range, const Range& gap_range,
              const ScanOptions& options = {});

BandEstimate band_summary(const ScanGrid& grid);

/// CSV with header  n,r1,r2,M1,M2,det,feasible,chain,residual  one row per
/// cell in grid order; floats with 17 significant digits; residual empty
/// when not computed; UTF-8, LF line endings.
void export_csv(const ScanGrid& grid, const std::string& path);

/// Parse a file written by export_csv. Cell values round-trip exactly.
ScanGrid import_csv(const std::string& path);

} // namespace ccstack
