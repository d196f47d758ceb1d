#include "ccstack/format.hpp"

#include <cstdio>

namespace ccstack {

std::string serialize_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    return buf;
}

std::string display_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace ccstack
