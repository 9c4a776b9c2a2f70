#include "vidsched/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace vidsched {

std::uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw ValidationError("empty random range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw TraceError("trace file is empty");
    if (split_csv_line(line) !=
        std::vector<std::string>{"display_index", "kind", "size_bits", "quality"})
        throw TraceError("trace header must be display_index,kind,size_bits,quality");

    std::vector<TraceRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw TraceError("line " + std::to_string(lineno) + ": expected 4 fields");
        try {
            TraceRecord r;
            r.display_index = static_cast<FrameId>(std::stol(fields[0]));
            if (fields[1].size() != 1) throw ValidationError("bad kind");
            r.kind = kind_from_char(fields[1][0]);
            r.size_bits = std::stoll(fields[2]);
            r.quality = quality_from_string(fields[3]);
            if (r.size_bits <= 0) throw ValidationError("non-positive size");
            records.push_back(r);
        } catch (const std::exception& e) {
            throw TraceError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (records.empty()) throw TraceError("trace file has no records");
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].display_index != static_cast<FrameId>(i))
            throw TraceError("display indices must be contiguous from 0");
    return records;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records) {
    out << "display_index,kind,size_bits,quality\n";
    for (const TraceRecord& r : records) {
        out << r.display_index << ',' << kind_to_char(r.kind) << ',' << r.size_bits << ','
            << quality_to_string(r.quality) << '\n';
    }
}

namespace {

Instance instance_from_records(const std::vector<TraceRecord>& records,
                               const DyadicPattern& pattern, const TimingConfig& timing) {
    const FrameId n = static_cast<FrameId>(records.size());
    for (const TraceRecord& r : records) {
        if (r.kind != pattern.kind_at(r.display_index))
            throw TraceError("frame " + std::to_string(r.display_index) + " is " +
                             std::string(1, kind_to_char(r.kind)) + " but pattern " +
                             pattern_to_string(pattern) + " dictates " +
                             std::string(1, kind_to_char(pattern.kind_at(r.display_index))));
    }
    if (timing.slot_duration_s > 1.0 / timing.fps + 1e-12)
        throw TraceError("slot duration above the frame period would tie deadlines");
    if (n % pattern.gop_size != 0 && n % pattern.gop_size != 1)
        throw TraceError("frame count " + std::to_string(n) + " does not fit pattern " +
                         pattern_to_string(pattern));

    DependencyDag skeleton = build_dyadic_sequence(pattern, n);
    std::vector<Frame> frames = skeleton.frames();
    for (FrameId i = 0; i < n; ++i) {
        frames[static_cast<std::size_t>(i)].size_bits = records[static_cast<std::size_t>(i)].size_bits;
        frames[static_cast<std::size_t>(i)].quality = records[static_cast<std::size_t>(i)].quality;
    }
    DependencyDag sized(std::move(frames), skeleton.edges());
    return Instance{with_deadlines(sized, timing.fps, timing.slot_duration_s,
                                   timing.initial_delay_s),
                    timing};
}

}  // namespace

Instance load_trace(std::istream& in, const DyadicPattern& pattern, const TimingConfig& timing) {
    return instance_from_records(read_trace_csv(in), pattern, timing);
}

Instance load_trace_file(const std::string& path, const DyadicPattern& pattern,
                         const TimingConfig& timing) {
    std::ifstream in(path);
    if (!in) throw TraceError("cannot open trace file: " + path);
    return load_trace(in, pattern, timing);
}

Instance synth_instance(std::uint64_t seed, const SynthParams& params) {
    Rng rng(seed);
    DependencyDag skeleton = build_dyadic_sequence(params.pattern, params.frame_count);
    std::vector<Frame> frames = skeleton.frames();
    for (Frame& f : frames) {
        switch (f.kind) {
            case FrameKind::I:
                f.size_bits = rng.uniform(params.i_size_min, params.i_size_max);
                break;
            case FrameKind::P:
                f.size_bits = rng.uniform(params.p_size_min, params.p_size_max);
                break;
            case FrameKind::B:
                f.size_bits = rng.uniform(params.b_size_min, params.b_size_max);
                break;
        }
        f.quality = rng.uniform(params.q_min, params.q_max);
    }
    DependencyDag sized(std::move(frames), skeleton.edges());
    return Instance{with_deadlines(sized, params.timing.fps, params.timing.slot_duration_s,
                                   params.timing.initial_delay_s),
                    params.timing};
}

}  // namespace vidsched
