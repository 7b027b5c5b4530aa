#include "degdiff/csv.hpp"

#include <charconv>

namespace degdiff {

std::string format_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

}  // namespace degdiff
