#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace ccstack {

/// Square matrix whose row k is the cyclic right shift of row k-1;
/// entry (i, j) = first_row[(j - i) mod n].
struct CirculantMatrix {
    std::vector<std::complex<double>> first_row;

    std::size_t size() const { return first_row.size(); }
    std::complex<double> entry(std::size_t i, std::size_t j) const {
        const std::size_t n = first_row.size();
        return first_row[(j % n + n - i % n) % n];
    }
};

struct CirculantEigenpair {
    std::complex<double> value;
    std::vector<std::complex<double>> vector; ///< (rho, rho^2, ..., rho^n)
};

/// f(x) = x (1/x^3 - lambda/M) = 1/x^2 - (lambda/M) x; strictly decreasing
/// on x > 0 for lambda/M >= 0.
double f_value(double x, double lambda_over_m);

/// The 2x2 system acting on the axis-pair mass differences
/// (d12, d34) = (m_inner+ - m_inner-, m_outer+ - m_outer-):
///   [ f(2 r1)                  f(r2-r1) + f(r1+r2) ] [d12]   [0]
///   [ f(r2-r1) - f(r1+r2)     -f(2 r2)             ] [d34] = [0]
/// The second row's printed form acts on -d34; the sign is absorbed into
/// the second column so both rows use the ordered difference vector.
struct PairSystem {
    std::array<std::array<double, 2>, 2> alpha{};
    double lambda_over_m = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;

    double determinant() const;
};

PairSystem pair_system(double r1, double r2, double lambda_over_m);

/// Eigenpairs of a circulant matrix from its first row:
/// value_k = sum_j first_row[j] rho_{k-1}^{j-1}, vector_k = (rho_{k-1}^1, ...,
/// rho_{k-1}^n), rho_k = exp(2 pi i k / n), k = 1..n.
std::vector<CirculantEigenpair>
circulant_eigen(const std::vector<std::complex<double>>& first_row);

/// The n x n circulant constraint matrix of the unit-circle polygon in the
/// complex embedding q_d = exp(2 pi i d / n): diagonal 0, off-diagonal
/// entries (1/|q_{j-k} - 1|^3 - lambda/M)(q_{j-k} - 1). Requires n >= 3.
///
/// The all-ones vector is annihilated exactly when lambda/M equals the
/// polygon's own multiplier ratio lambda_star(n)/n: the row sum is
/// n*(lambda/M) - lambda_star(n) for every row.
CirculantMatrix polygon_constraint_matrix(int n, double lambda_over_m);

/// Rank/kernel analysis of the constraint matrix acting on REAL mass
/// vectors, i.e. of the stacked 2n x n real matrix [Re C; Im C]. Over the
/// complex field the row-sum symmetry pairs eigenvalues (value_n =
/// -value_1), so a kernel containing the ones vector is never simple there;
/// over the reals it is, which is what a claim about real masses needs.
struct KernelReport {
    int rank = 0;                ///< numerical rank at threshold tol * sigma_max
    double angle_to_ones = 0.0;  ///< radians between kernel direction and (1,...,1)
    double ones_residual = 0.0;  ///< ||C * (1,...,1)||
    bool equal_mass_certified = false; ///< rank == n-1 and angle <= angle_tol
};

KernelReport analyze_kernel(const CirculantMatrix& c, double tol,
                            double angle_tol = 1e-8);

/// True iff the numerical kernel over real vectors is one-dimensional and
/// spanned by (1,...,1).
bool equal_mass_kernel_check(const CirculantMatrix& c, double tol);

} // namespace ccstack
