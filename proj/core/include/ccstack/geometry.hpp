#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace ccstack {

/// Pairwise distances at or below this are treated as collisions.
inline constexpr double kCollisionTolerance = 1e-12;

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3 operator+(const Point3& p) const { return {x + p.x, y + p.y, z + p.z}; }
    Point3 operator-(const Point3& p) const { return {x - p.x, y - p.y, z - p.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Point3 operator-() const { return {-x, -y, -z}; }

    double dot(const Point3& p) const { return x * p.x + y * p.y + z * p.z; }
    double norm_squared() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_squared()); }
};

inline Point3 operator*(double s, const Point3& p) { return p * s; }

struct Body {
    double mass = 1.0;
    Point3 position;
};

/// An ordered list of point masses, collision-free by construction.
/// Body order is contractual: downstream analyses index bodies the same way
/// the builder laid them out (polygon first, then axis pairs).
class Configuration {
public:
    /// Validates: at least 2 bodies, positive finite masses, finite
    /// positions, minimum pairwise distance above kCollisionTolerance.
    /// Throws std::invalid_argument or CollisionError.
    explicit Configuration(std::vector<Body> bodies);

    const std::vector<Body>& bodies() const { return bodies_; }
    std::size_t size() const { return bodies_.size(); }
    double total_mass() const;

private:
    std::vector<Body> bodies_;
};

/// Parameters of the polygon-plus-axis-pairs family: n unit masses on the
/// unit circle, a pair of mass m1 at (0,0,+-r1) and a pair of mass m2 at
/// (0,0,+-r2), with 0 < r1 < r2.
struct StackedParams {
    int n = 3;
    double r1 = 1.0;
    double r2 = 2.0;
    double m1 = 1.0;
    double m2 = 1.0;
};

/// Vertices of the regular n-gon on the unit circle in the z = 0 plane,
/// counterclockwise from (1,0,0).
std::vector<Point3> regular_polygon(int n);

/// Assemble the n+4 body configuration in contractual order: polygon bodies
/// (mass 1) first, then the r1 pair (mass m1), then the r2 pair (mass m2).
Configuration build_stacked(const StackedParams& params);

/// Newtonian potential  sum_{j<k} m_j m_k / |q_j - q_k|  (G = 1).
double potential(const Configuration& config);

/// Moment of inertia  sum_k m_k |q_k|^2.
double inertia(const Configuration& config);

/// Mass-weighted position sum  sum_j m_j q_j  (not divided by total mass).
Point3 weighted_centroid(const Configuration& config);

// --- JSON configuration format ---------------------------------------------
// {"bodies": [{"mass": <number>, "position": [x, y, z]}, ...]}
// Numbers are written with 17 significant digits (round-trip exact).

std::string configuration_to_json(const Configuration& config);

/// Parses and validates; error messages name the offending field.
Configuration configuration_from_json(const std::string& text);

Configuration load_configuration(const std::string& path);
void save_configuration(const Configuration& config, const std::string& path);

} // namespace ccstack
