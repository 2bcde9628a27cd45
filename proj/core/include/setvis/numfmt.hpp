#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace setvis {

// Fixed-point with at most 3 decimals, trailing zeros trimmed.  Keeps SVG
// output byte-stable across platforms.
inline std::string format_number(double v) {
    if (std::abs(v) < 5e-4) {
        v = 0.0; // avoid "-0"
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3f", v);
    std::string s(buffer);
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s;
}

} // namespace setvis
