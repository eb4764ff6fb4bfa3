#pragma once

#include <cstdio>
#include <string>

namespace kohn::detail {

/// Round-trippable, locale-independent rendering of a double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace kohn::detail
