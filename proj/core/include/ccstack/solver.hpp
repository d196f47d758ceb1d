#pragma once

namespace ccstack {

/// The 2x2 linear system for the axis-pair masses at fixed (n, r1, r2):
///   a11*M1 + a12*M2 = b1
///   a21*M1 + a22*M2 = b2
/// a11/a22 depend only on r1/r2 respectively; lambda_star is the polygon
/// multiplier entering b1, b2.
struct CoefficientSystem {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;
    double b1 = 0.0, b2 = 0.0;
    double lambda_star = 0.0;
    int n = 0;
    double r1 = 0.0, r2 = 0.0;
};

struct MassSolution {
    double m1 = 0.0;          ///< possibly non-positive
    double m2 = 0.0;
    double lambda = 0.0;      ///< lambda_star + 2 M1/(1+r1^2)^{3/2} + 2 M2/(1+r2^2)^{3/2}
    double determinant = 0.0; ///< a11*a22 - a12*a21
    bool feasible = false;    ///< m1 > 0 and m2 > 0
};

struct FeasibilityVerdict {
    /// det < 0, b1*a22 - b2*a12 < 0, b2*a11 - b1*a21 < 0 (all strict).
    bool sign_conditions_hold = false;
    /// a11/a21 < b1/b2 < a12/a22. False when indeterminate.
    bool chain_holds = false;
    /// A chain ratio had a zero denominator; chain_holds is then false
    /// rather than an exception.
    bool chain_indeterminate = false;
    /// Exact sign algebra on the Cramer numerators and determinant; holds
    /// whenever sign_conditions_hold does.
    bool masses_positive = false;
};

/// Evaluate the six coefficient entries plus lambda_star(n).
/// Requires n >= 2 and 0 < r1 < r2 (ordering violations throw
/// std::invalid_argument).
CoefficientSystem coefficients(int n, double r1, double r2);

/// Closed-form solve. Throws SingularSystemError when |det| <=
/// 1e-13 * max(|a11*a22|, |a12*a21|). Determinants are evaluated with
/// FMA-compensated products so the quotients stay accurate under
/// cancellation.
MassSolution solve_masses(const CoefficientSystem& coeffs);

/// Evaluate both feasibility formulations (strict sign conditions and the
/// ratio chain) plus mass positivity.
FeasibilityVerdict feasible(const CoefficientSystem& coeffs);

} // namespace ccstack
