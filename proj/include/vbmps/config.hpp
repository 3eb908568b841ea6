#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vbmps {

// Tolerances used throughout.  rank_tol identifies numerically-zero
// singular values (relative to the largest), assert_tol bounds equality
// checks, psd_tol floors eigenvalues of matrices that must be positive
// semidefinite.
struct ToleranceConfig {
    double rank_tol = 1e-10;
    double assert_tol = 1e-9;
    double psd_tol = 1e-9;

    void validate() const {
        if (rank_tol <= 0 || assert_tol <= 0 || psd_tol <= 0)
            throw std::invalid_argument("ToleranceConfig: tolerances must be positive");
        if (rank_tol > assert_tol)
            throw std::invalid_argument("ToleranceConfig: rank_tol must not exceed assert_tol");
    }
};

inline constexpr long long kDefaultDimensionCap = 20000;

// Dense-space guardrail.  Every operation that would materialize a vector
// or matrix over a d^k-dimensional space checks against this cap first.
// Overridable through the VBMPS_DIMENSION_CAP environment variable.
inline long long dimension_cap() {
    if (const char* env = std::getenv("VBMPS_DIMENSION_CAP")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("VBMPS_DIMENSION_CAP must be a positive integer, got '" +
                                    std::string(env) + "'");
    }
    return kDefaultDimensionCap;
}

struct DimensionCapExceeded : std::runtime_error {
    explicit DimensionCapExceeded(long long requested, long long cap)
        : std::runtime_error("dimension " + std::to_string(requested) +
                             " exceeds configured cap " + std::to_string(cap)) {}
};

inline void check_dimension_cap(long long requested) {
    long long cap = dimension_cap();
    if (requested > cap) throw DimensionCapExceeded(requested, cap);
}

} // namespace vbmps
