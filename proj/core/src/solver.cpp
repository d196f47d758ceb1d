#include "ccstack/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "ccstack/central.hpp"
#include "ccstack/errors.hpp"
#include "ccstack/format.hpp"

namespace ccstack {

namespace {

// a*d - b*c with an FMA-compensated correction term (Kahan); accurate to a
// couple of ulps even under heavy cancellation, which keeps the Cramer
// quotients trustworthy near the singular set.
double det2(double a, double b, double c, double d) {
    const double w = b * c;
    const double e = std::fma(-b, c, w);
    const double f = std::fma(a, d, -w);
    return f + e;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

CoefficientSystem coefficients(int n, double r1, double r2) {
    if (n < 2) {
        throw std::invalid_argument("coefficients requires n >= 2");
    }
    if (!(r1 > 0.0)) {
        throw std::invalid_argument("coefficients requires r1 > 0");
    }
    if (!(r2 > r1)) {
        throw std::invalid_argument("coefficients requires r2 > r1");
    }
    const double g1 = 1.0 / std::pow(1.0 + r1 * r1, 1.5);
    const double g2 = 1.0 / std::pow(1.0 + r2 * r2, 1.5);
    const double sum = r1 + r2;
    const double gap = r2 - r1;

    CoefficientSystem cs;
    cs.n = n;
    cs.r1 = r1;
    cs.r2 = r2;
    cs.lambda_star = lambda_star(n);
    cs.a11 = 1.0 / (4.0 * r1 * r1 * r1) - 2.0 * g1;
    cs.a12 = 1.0 / (sum * sum * r1) - 1.0 / (gap * gap * r1) - 2.0 * g2;
    cs.a21 = 1.0 / (sum * sum * r2) + 1.0 / (gap * gap * r2) - 2.0 * g1;
    cs.a22 = 1.0 / (4.0 * r2 * r2 * r2) - 2.0 * g2;
    cs.b1 = cs.lambda_star - n * g1;
    cs.b2 = cs.lambda_star - n * g2;
    return cs;
}

MassSolution solve_masses(const CoefficientSystem& coeffs) {
    const double det = det2(coeffs.a11, coeffs.a12, coeffs.a21, coeffs.a22);
    const double scale =
        std::max(std::abs(coeffs.a11 * coeffs.a22), std::abs(coeffs.a12 * coeffs.a21));
    if (std::abs(det) <= 1e-13 * scale) {
        throw SingularSystemError(
            "coefficient system is numerically singular (det = " +
                display_double(det) + ")",
            det, scale > 0.0 ? scale / std::abs(det) : 0.0);
    }
    MassSolution sol;
    sol.determinant = det;
    sol.m1 = det2(coeffs.b1, coeffs.a12, coeffs.b2, coeffs.a22) / det;
    sol.m2 = det2(coeffs.a11, coeffs.b1, coeffs.a21, coeffs.b2) / det;
    const double g1 = 1.0 / std::pow(1.0 + coeffs.r1 * coeffs.r1, 1.5);
    const double g2 = 1.0 / std::pow(1.0 + coeffs.r2 * coeffs.r2, 1.5);
    sol.lambda = coeffs.lambda_star + 2.0 * sol.m1 * g1 + 2.0 * sol.m2 * g2;
    sol.feasible = sol.m1 > 0.0 && sol.m2 > 0.0;
    return sol;
}

FeasibilityVerdict feasible(const CoefficientSystem& coeffs) {
    const double det = det2(coeffs.a11, coeffs.a12, coeffs.a21, coeffs.a22);
    const double num1 = det2(coeffs.b1, coeffs.a12, coeffs.b2, coeffs.a22);
    const double num2 = det2(coeffs.a11, coeffs.b1, coeffs.a21, coeffs.b2);

    FeasibilityVerdict verdict;
    verdict.sign_conditions_hold = det < 0.0 && num1 < 0.0 && num2 < 0.0;
    // Mass positivity by sign algebra (no division, no threshold): M1 and M2
    // are positive exactly when each numerator shares the determinant's sign.
    verdict.masses_positive = sign(det) != 0 && sign(num1) == sign(det) &&
                              sign(num2) == sign(det);
    if (coeffs.a21 == 0.0 || coeffs.a22 == 0.0 || coeffs.b2 == 0.0) {
        verdict.chain_indeterminate = true;
        verdict.chain_holds = false;
    } else {
        const double lo = coeffs.a11 / coeffs.a21;
        const double mid = coeffs.b1 / coeffs.b2;
        const double hi = coeffs.a12 / coeffs.a22;
        verdict.chain_holds = lo < mid && mid < hi;
    }
    return verdict;
}

} // namespace ccstack
