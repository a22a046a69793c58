#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include "evaplab/errors.hpp"

namespace evaplab {

namespace detail {
inline std::size_t& capacity_slot() {
    static std::size_t value = [] {
        std::size_t v = std::size_t{1} << 12; // default: 4096 amplitudes
        if (const char* env = std::getenv("EVAPLAB_CAPACITY")) {
            char* end = nullptr;
            const unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end != env && parsed > 1) v = static_cast<std::size_t>(parsed);
        }
        return v;
    }();
    return value;
}
} // namespace detail

/// Maximum number of complex amplitudes any state may hold.
inline std::size_t capacity_limit() { return detail::capacity_slot(); }

/// Overrides the budget (tests and embedding programs).
inline void set_capacity_limit(std::size_t amplitudes) { detail::capacity_slot() = amplitudes; }

inline void check_capacity(std::size_t total_dim, const char* where) {
    if (total_dim == 0) {
        throw CapacityError(std::string(where) + ": zero-dimensional register");
    }
    if (total_dim > capacity_limit()) {
        throw CapacityError(std::string(where) + ": total dimension " + std::to_string(total_dim) +
                            " exceeds amplitude budget " + std::to_string(capacity_limit()));
    }
}

} // namespace evaplab
