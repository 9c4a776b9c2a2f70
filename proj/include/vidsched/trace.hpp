#ifndef VIDSCHED_TRACE_HPP
#define VIDSCHED_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vidsched/dyadic.hpp"

namespace vidsched {

struct TraceRecord {
    FrameId display_index = 0;
    FrameKind kind = FrameKind::I;
    Bits size_bits = 1;
    Quality quality = 0;  // per-frame luminance quality, milli-units
};

struct TimingConfig {
    double fps = 30.0;
    double slot_duration_s = 0.001;
    double initial_delay_s = 1.0;
};

/// A frame sequence plus the timing metadata needed to re-derive deadlines
/// for a chosen initial delay.
struct Instance {
    DependencyDag dag;
    TimingConfig timing;
};

/// CSV records (header: display_index,kind,size_bits,quality).
std::vector<TraceRecord> read_trace_csv(std::istream& in);
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records);

/// Builds the instance for a trace: kinds are cross-checked against the
/// declared GnBm pattern, edges come from the dyadic builder, and deadlines
/// follow floor((delay + index / fps) / slot).
Instance load_trace(std::istream& in, const DyadicPattern& pattern, const TimingConfig& timing);
Instance load_trace_file(const std::string& path, const DyadicPattern& pattern,
                         const TimingConfig& timing);

struct SynthParams {
    DyadicPattern pattern{16, 3};
    FrameId frame_count = 32;
    TimingConfig timing;
    Bits i_size_min = 120000, i_size_max = 360000;
    Bits p_size_min = 40000, p_size_max = 150000;
    Bits b_size_min = 8000, b_size_max = 60000;
    Quality q_min = 30000, q_max = 45000;  // milli-units
};

/// Deterministic synthetic instance: sizes and qualities drawn per kind from
/// a seeded generator, deadlines from the timing config.
Instance synth_instance(std::uint64_t seed, const SynthParams& params);

/// Small splitmix64 stream; identical output on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive

private:
    std::uint64_t state_;
};

}  // namespace vidsched

#endif
