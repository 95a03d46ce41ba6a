#pragma once

#include <cstdio>
#include <string>

namespace placekit {

// Canonical numeric formatting for all text outputs: 9 significant digits,
// shortest form. Shared by the CSV and JSON writers so reports are
// reproducible byte-for-byte.
inline std::string sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace placekit
