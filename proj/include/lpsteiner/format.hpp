#pragma once

#include <cstdio>
#include <string>

namespace lpsteiner {

// Render a double with 17 significant digits (%.17g): lossless round-trip
// through text, used for canonical body specs and machine-readable output.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

}  // namespace lpsteiner
