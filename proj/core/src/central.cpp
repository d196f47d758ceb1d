#include "ccstack/central.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ccstack/errors.hpp"
#include "ccstack/format.hpp"

namespace ccstack {

namespace {

// Summation over j runs in ascending index order everywhere so results are
// bit-reproducible regardless of caller or thread.
ResidualReport finish_report(const Configuration& config, double lambda,
                             std::vector<Point3> per_body) {
    ResidualReport report;
    report.lambda_used = lambda;
    report.per_body = std::move(per_body);
    double max_norm = 0.0;
    for (const Point3& r : report.per_body) {
        max_norm = std::max(max_norm, r.norm());
    }
    report.max_norm = max_norm;
    double scale = 0.0;
    for (const Body& b : config.bodies()) {
        scale = std::max(scale, b.mass * b.position.norm());
    }
    scale *= std::abs(lambda);
    if (scale > 0.0) {
        report.relative_max = max_norm / scale;
    } else {
        report.relative_max =
            max_norm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return report;
}

} // namespace

ResidualReport residual(const Configuration& config, double lambda) {
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("residual requires finite lambda");
    }
    const auto& bodies = config.bodies();
    std::vector<Point3> per_body(bodies.size());
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        Point3 acc;
        for (std::size_t j = 0; j < bodies.size(); ++j) {
            if (j == k) continue;
            const Point3 d = bodies[j].position - bodies[k].position;
            const double dist = d.norm();
            acc = acc + (bodies[j].mass * bodies[k].mass / (dist * dist * dist)) * d;
        }
        per_body[k] = acc + (lambda * bodies[k].mass) * bodies[k].position;
    }
    return finish_report(config, lambda, std::move(per_body));
}

ResidualReport residual_normalized(const Configuration& config, double lambda) {
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("residual_normalized requires finite lambda");
    }
    const auto& bodies = config.bodies();
    const double lambda_over_m = lambda / config.total_mass();
    std::vector<Point3> per_body(bodies.size());
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        Point3 acc;
        for (std::size_t j = 0; j < bodies.size(); ++j) {
            if (j == k) continue;
            const Point3 d = bodies[j].position - bodies[k].position;
            const double dist = d.norm();
            acc = acc +
                  (bodies[j].mass * (1.0 / (dist * dist * dist) - lambda_over_m)) * d;
        }
        per_body[k] = acc;
    }
    return finish_report(config, lambda, std::move(per_body));
}

VerifyOutcome verify(const Configuration& config, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("verify requires tol > 0");
    }
    const double centroid_norm = weighted_centroid(config).norm();
    if (centroid_norm > 1e-10) {
        throw PreconditionError(
            "verify requires a centered configuration; weighted centroid norm is " +
            display_double(centroid_norm));
    }
    VerifyOutcome outcome;
    outcome.lambda = potential(config) / inertia(config);
    outcome.report = residual(config, outcome.lambda);
    outcome.is_cc = outcome.report.relative_max <= tol;
    return outcome;
}

double lambda_star(int n) {
    if (n < 2) {
        throw std::invalid_argument("lambda_star requires n >= 2");
    }
    // x-component of the first vertex's equation; by symmetry the defect is
    // parallel to (1,0,0).
    double sum_x = 0.0;
    for (int j = 2; j <= n; ++j) {
        const double angle = 2.0 * std::numbers::pi * (j - 1) / n;
        const double dx = std::cos(angle) - 1.0;
        const double dy = std::sin(angle);
        const double dist = std::sqrt(dx * dx + dy * dy);
        sum_x += dx / (dist * dist * dist);
    }
    return -sum_x;
}

std::string report_to_json(const ResidualReport& report) {
    std::ostringstream out;
    out << "{\"lambda\":" << serialize_double(report.lambda_used)
        << ",\"max_norm\":" << serialize_double(report.max_norm)
        << ",\"relative_max\":" << serialize_double(report.relative_max)
        << ",\"per_body\":[";
    for (std::size_t k = 0; k < report.per_body.size(); ++k) {
        if (k != 0) out << ",";
        const Point3& r = report.per_body[k];
        out << "[" << serialize_double(r.x) << "," << serialize_double(r.y)
            << "," << serialize_double(r.z) << "]";
    }
    out << "]}";
    return out.str();
}

} // namespace ccstack
