#ifndef VIDSCHED_CORE_HPP
#define VIDSCHED_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vidsched {

using FrameId = std::int32_t;
using Bits = std::int64_t;
using Slot = std::int64_t;

/// Quality values are fixed-point with three decimal digits (milli-units),
/// so reward sums and optimality comparisons are exact integer arithmetic.
using Quality = std::int64_t;

constexpr Quality kQualityScale = 1000;

Quality quality_from_string(const std::string& text);
Quality quality_from_double(double value);
double quality_to_double(Quality q);
/// Minimal decimal rendering, e.g. 36540 -> "36.54", 100 -> "0.1", 5000 -> "5".
std::string quality_to_string(Quality q);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct TraceError : Error {
    using Error::Error;
};

struct LimitError : Error {
    using Error::Error;
};

/// Thrown by solve() when the prediction structure is neither SIO nor quasi-SIO.
struct UnsupportedStructure : Error {
    FrameId witness_node;
    std::string reason;
    UnsupportedStructure(FrameId node, const std::string& why)
        : Error("unsupported structure at frame " + std::to_string(node) + ": " + why),
          witness_node(node),
          reason(why) {}
};

}  // namespace vidsched

#endif
