#pragma once

#include <string_view>

namespace geodesic {

/// True when GEODESIC_DEBUG_ASSERT=1 is set in the environment.
bool debug_assertions_enabled();

/// Thrown by per-level structural checks when an invariant fails.
[[noreturn]] void invariant_failure(std::string_view what);

inline void check_invariant(bool ok, std::string_view what) {
    if (!ok) {
        invariant_failure(what);
    }
}

}  // namespace geodesic
