#include "geodesic/debug.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace geodesic {

bool debug_assertions_enabled() {
    static const bool enabled = [] {
        const char* value = std::getenv("GEODESIC_DEBUG_ASSERT");
        return value != nullptr && std::string(value) == "1";
    }();
    return enabled;
}

void invariant_failure(std::string_view what) {
    throw std::logic_error("invariant violated: " + std::string(what));
}

}  // namespace geodesic
