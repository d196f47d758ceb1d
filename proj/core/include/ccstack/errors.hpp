#pragma once

#include <stdexcept>
#include <string>

namespace ccstack {

/// Two bodies closer than the collision tolerance (or an input that would
/// place them there, e.g. r1 == r2).
class CollisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition does not hold (e.g. verify() on a configuration
/// whose weighted centroid is off the origin).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The 2x2 coefficient system is too close to singular for a reliable solve.
/// Carries the computed determinant and a crude condition estimate
/// (product scale divided by |determinant|).
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(const std::string& what, double determinant,
                        double condition_estimate)
        : std::runtime_error(what),
          determinant_(determinant),
          condition_estimate_(condition_estimate) {}

    double determinant() const { return determinant_; }
    double condition_estimate() const { return condition_estimate_; }

private:
    double determinant_;
    double condition_estimate_;
};

} // namespace ccstack
