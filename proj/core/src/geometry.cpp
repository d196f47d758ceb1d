#include "ccstack/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "ccstack/errors.hpp"
#include "ccstack/format.hpp"

namespace ccstack {

namespace {

bool finite(const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

} // namespace

Configuration::Configuration(std::vector<Body> bodies)
    : bodies_(std::move(bodies)) {
    if (bodies_.size() < 2) {
        throw std::invalid_argument("Configuration requires at least 2 bodies");
    }
    for (std::size_t k = 0; k < bodies_.size(); ++k) {
        const Body& b = bodies_[k];
        if (!(b.mass > 0.0) || !std::isfinite(b.mass)) {
            throw std::invalid_argument("body " + std::to_string(k) +
                                        ": mass must be positive and finite");
        }
        if (!finite(b.position)) {
            throw std::invalid_argument("body " + std::to_string(k) +
                                        ": position must be finite");
        }
    }
    for (std::size_t j = 0; j < bodies_.size(); ++j) {
        for (std::size_t k = j + 1; k < bodies_.size(); ++k) {
            const double d = (bodies_[j].position - bodies_[k].position).norm();
            if (d < kCollisionTolerance) {
                throw CollisionError("bodies " + std::to_string(j) + " and " +
                                     std::to_string(k) + " collide (distance " +
                                     display_double(d) + ")");
            }
        }
    }
}

double Configuration::total_mass() const {
    double m = 0.0;
    for (const Body& b : bodies_) m += b.mass;
    return m;
}

std::vector<Point3> regular_polygon(int n) {
    if (n < 2) {
        throw std::invalid_argument("regular_polygon requires n >= 2");
    }
    std::vector<Point3> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / n;
        points.push_back({std::cos(angle), std::sin(angle), 0.0});
    }
    return points;
}

Configuration build_stacked(const StackedParams& params) {
    if (params.n < 2) {
        throw std::invalid_argument("build_stacked requires n >= 2");
    }
    if (!(params.r1 > 0.0)) {
        throw std::invalid_argument("build_stacked requires r1 > 0");
    }
    if (std::abs(params.r1 - params.r2) < kCollisionTolerance) {
        throw CollisionError("axis pairs coincide: r1 == r2");
    }
    if (!(params.r2 > params.r1)) {
        throw std::invalid_argument("build_stacked requires r2 > r1");
    }
    if (!(params.m1 > 0.0) || !(params.m2 > 0.0)) {
        throw std::invalid_argument("build_stacked requires positive axis masses");
    }
    std::vector<Body> bodies;
    bodies.reserve(static_cast<std::size_t>(params.n) + 4);
    for (const Point3& p : regular_polygon(params.n)) {
        bodies.push_back({1.0, p});
    }
    bodies.push_back({params.m1, {0.0, 0.0, params.r1}});
    bodies.push_back({params.m1, {0.0, 0.0, -params.r1}});
    bodies.push_back({params.m2, {0.0, 0.0, params.r2}});
    bodies.push_back({params.m2, {0.0, 0.0, -params.r2}});
    return Configuration(std::move(bodies));
}

double potential(const Configuration& config) {
    const auto& bodies = config.bodies();
    double u = 0.0;
    for (std::size_t j = 0; j < bodies.size(); ++j) {
        for (std::size_t k = j + 1; k < bodies.size(); ++k) {
            const double d = (bodies[j].position - bodies[k].position).norm();
            u += bodies[j].mass * bodies[k].mass / d;
        }
    }
    return u;
}

double inertia(const Configuration& config) {
    double i = 0.0;
    for (const Body& b : config.bodies()) {
        i += b.mass * b.position.norm_squared();
    }
    return i;
}

Point3 weighted_centroid(const Configuration& config) {
    Point3 sum;
    for (const Body& b : config.bodies()) {
        sum = sum + b.mass * b.position;
    }
    return sum;
}

std::string configuration_to_json(const Configuration& config) {
    std::ostringstream out;
    out << "{\"bodies\":[";
    const auto& bodies = config.bodies();
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        if (k != 0) out << ",";
        const Body& b = bodies[k];
        out << "{\"mass\":" << serialize_double(b.mass) << ",\"position\":["
            << serialize_double(b.position.x) << ","
            << serialize_double(b.position.y) << ","
            << serialize_double(b.position.z) << "]}";
    }
    out << "]}";
    return out.str();
}

Configuration configuration_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("bodies")) {
        throw std::invalid_argument("malformed configuration: missing field \"bodies\"");
    }
    const auto& arr = doc["bodies"];
    if (!arr.is_array()) {
        throw std::invalid_argument("malformed configuration: \"bodies\" must be an array");
    }
    std::vector<Body> bodies;
    bodies.reserve(arr.size());
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto& item = arr[k];
        const std::string where = "bodies[" + std::to_string(k) + "]";
        if (!item.is_object() || !item.contains("mass") || !item.contains("position")) {
            throw std::invalid_argument("malformed configuration: " + where +
                                        " needs \"mass\" and \"position\"");
        }
        if (!item["mass"].is_number()) {
            throw std::invalid_argument("malformed configuration: " + where +
                                        ".mass must be a number");
        }
        const double mass = item["mass"].get<double>();
        if (!(mass > 0.0)) {
            throw std::invalid_argument("malformed configuration: " + where +
                                        ".mass must be positive");
        }
        const auto& p = item["position"];
        if (!p.is_array() || p.size() != 3 || !p[0].is_number() ||
            !p[1].is_number() || !p[2].is_number()) {
            throw std::invalid_argument("malformed configuration: " + where +
                                        ".position must be [x, y, z]");
        }
        bodies.push_back({mass, {p[0].get<double>(), p[1].get<double>(),
                                 p[2].get<double>()}});
    }
    return Configuration(std::move(bodies));
}

Configuration load_configuration(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return configuration_from_json(buf.str());
}

void save_configuration(const Configuration& config, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << configuration_to_json(config) << "\n";
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

} // namespace ccstack
