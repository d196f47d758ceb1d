#pragma once

#include <string>
#include <vector>

#include "ccstack/geometry.hpp"

namespace ccstack {

/// Default relative-residual tolerance for central-configuration verdicts.
/// Closed-form inputs land near 1e-13, so this leaves margin for rounding
/// accumulation at large n.
inline constexpr double kDefaultVerifyTolerance = 1e-10;

/// Per-body defect of the central-configuration equations at a given lambda.
struct ResidualReport {
    double lambda_used = 0.0;
    std::vector<Point3> per_body; ///< one defect vector per body, input order
    double max_norm = 0.0;        ///< largest Euclidean norm over bodies
    double relative_max = 0.0;    ///< max_norm / (|lambda| * max_k m_k |q_k|)
};

struct VerifyOutcome {
    bool is_cc = false;
    double lambda = 0.0; ///< U / I
    ResidualReport report;
};

/// Defect of the mass-weighted form: for each body k,
///   sum_{j != k} m_j m_k (q_j - q_k)/|q_j - q_k|^3 + lambda m_k q_k.
/// Zero for every body exactly when (config, lambda) is a central
/// configuration.
ResidualReport residual(const Configuration& config, double lambda);

/// Defect of the equivalent normalized form: for each body k,
///   sum_{j != k} m_j (1/|q_j - q_k|^3 - lambda/M)(q_j - q_k),
/// with M the total mass. Agrees with residual()/m_k on centered
/// configurations.
ResidualReport residual_normalized(const Configuration& config, double lambda);

/// Decide central-configuration status at lambda = U/I. Requires the
/// weighted centroid within 1e-10 of the origin (throws PreconditionError
/// naming the centroid norm otherwise; the equations presume centered
/// coordinates and recentring silently would mask that violation).
VerifyOutcome verify(const Configuration& config,
                     double tol = kDefaultVerifyTolerance);

/// The multiplier of the unit-mass regular n-gon on the unit circle,
/// computed from the x-component of the first vertex's equation.
double lambda_star(int n);

/// {"lambda":..., "max_norm":..., "relative_max":..., "per_body":[[x,y,z],...]}
std::string report_to_json(const ResidualReport& report);

} // namespace ccstack
