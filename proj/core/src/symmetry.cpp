#include "ccstack/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "ccstack/errors.hpp"

namespace ccstack {

namespace {

// exp(2 pi i k / n) with the exponent reduced mod n before the trig call.
std::complex<double> unit_root(std::size_t k, std::size_t n) {
    return std::polar(1.0, 2.0 * std::numbers::pi *
                               static_cast<double>(k % n) /
                               static_cast<double>(n));
}

} // namespace

double f_value(double x, double lambda_over_m) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("f_value requires x > 0");
    }
    if (lambda_over_m < 0.0) {
        throw std::invalid_argument("f_value requires lambda_over_m >= 0");
    }
    return 1.0 / (x * x) - lambda_over_m * x;
}

double PairSystem::determinant() const {
    return alpha[0][0] * alpha[1][1] - alpha[0][1] * alpha[1][0];
}

PairSystem pair_system(double r1, double r2, double lambda_over_m) {
    if (!(r1 > 0.0)) {
        throw std::invalid_argument("pair_system requires r1 > 0");
    }
    if (r1 == r2) {
        throw CollisionError("pair_system: r1 == r2 places bodies together");
    }
    if (!(r2 > r1)) {
        throw std::invalid_argument("pair_system requires r2 > r1");
    }
    if (!(lambda_over_m > 0.0)) {
        throw std::invalid_argument("pair_system requires lambda_over_m > 0");
    }
    PairSystem system;
    system.lambda_over_m = lambda_over_m;
    system.r1 = r1;
    system.r2 = r2;
    const double f_gap = f_value(r2 - r1, lambda_over_m);
    const double f_sum = f_value(r1 + r2, lambda_over_m);
    system.alpha[0][0] = f_value(2.0 * r1, lambda_over_m);
    system.alpha[0][1] = f_gap + f_sum;
    system.alpha[1][0] = f_gap - f_sum;
    system.alpha[1][1] = -f_value(2.0 * r2, lambda_over_m);
    return system;
}

std::vector<CirculantEigenpair>
circulant_eigen(const std::vector<std::complex<double>>& first_row) {
    const std::size_t n = first_row.size();
    if (n == 0) {
        throw std::invalid_argument("circulant_eigen requires a nonempty row");
    }
    std::vector<CirculantEigenpair> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> value = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            value += first_row[j] * unit_root(k * j, n);
        }
        std::vector<std::complex<double>> vec(n);
        for (std::size_t j = 0; j < n; ++j) {
            vec[j] = unit_root(k * (j + 1), n);
        }
        pairs[k] = {value, std::move(vec)};
    }
    return pairs;
}

CirculantMatrix polygon_constraint_matrix(int n, double lambda_over_m) {
    if (n < 3) {
        throw std::invalid_argument("polygon_constraint_matrix requires n >= 3");
    }
    if (!(lambda_over_m > 0.0)) {
        throw std::invalid_argument(
            "polygon_constraint_matrix requires lambda_over_m > 0");
    }
    const std::size_t size = static_cast<std::size_t>(n);
    CirculantMatrix c;
    c.first_row.assign(size, 0.0);
    for (std::size_t d = 1; d < size; ++d) {
        const std::complex<double> q = unit_root(d, size) - 1.0;
        const double dist = std::abs(q);
        c.first_row[d] = (1.0 / (dist * dist * dist) - lambda_over_m) * q;
    }
    return c;
}

KernelReport analyze_kernel(const CirculantMatrix& c, double tol,
                            double angle_tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("analyze_kernel requires tol > 0");
    }
    const std::size_t n = c.size();
    if (n == 0) {
        throw std::invalid_argument("analyze_kernel requires a nonempty matrix");
    }
    // Masses are real, so the matrix acts as the 2n x n real operator
    // [Re C; Im C].
    Eigen::MatrixXd stacked(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::complex<double> e = c.entry(i, j);
            stacked(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                e.real();
            stacked(static_cast<Eigen::Index>(n + i),
                    static_cast<Eigen::Index>(j)) = e.imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma(0);

    KernelReport report;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol * sigma_max) ++report.rank;
    }

    const Eigen::VectorXd kernel = svd.matrixV().col(static_cast<Eigen::Index>(n) - 1);
    const Eigen::VectorXd ones =
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                  1.0 / std::sqrt(static_cast<double>(n)));
    // asin of the orthogonal component; acos of the inner product bottoms out
    // near 1.5e-8 in doubles, which would sit right at typical thresholds.
    const double ortho = (kernel - kernel.dot(ones) * ones).norm();
    report.angle_to_ones = std::asin(std::clamp(ortho, 0.0, 1.0));

    std::complex<double> row_sum = 0.0;
    for (const std::complex<double>& e : c.first_row) row_sum += e;
    report.ones_residual = std::abs(row_sum) * std::sqrt(static_cast<double>(n));

    report.equal_mass_certified = report.rank == static_cast<int>(n) - 1 &&
                                  report.angle_to_ones <= angle_tol;
    return report;
}

bool equal_mass_kernel_check(const CirculantMatrix& c, double tol) {
    return analyze_kernel(c, tol).equal_mass_certified;
}

} // namespace ccstack
