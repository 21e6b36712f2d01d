#pragma once

#include <string>

namespace s1lab {

// Process-wide knobs shared by the library and the CLI.  Set these before
// launching work; they are read concurrently but only written at startup.
struct Settings {
    // Relative tolerance used by the default strip quadrature.
    double strip_rel_tol = 1e-9;
    // Directory for on-disk tables.  Empty string disables file caching.
    std::string cache_dir;
    // Seed for any randomized probing; 0 means a fixed default.
    unsigned long long seed = 0;
};

Settings& settings();

}  // namespace s1lab
