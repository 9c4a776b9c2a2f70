#include <doctest.h>

#include <sstream>

#include "test_helpers.hpp"
#include "vidsched/mbfs.hpp"
#include "vidsched/serialize.hpp"
#include "vidsched/trace.hpp"

using namespace vidsched;

namespace {

std::string sample_trace(int frames, const DyadicPattern& pattern) {
    std::ostringstream out;
    out << "display_index,kind,size_bits,quality\n";
    for (int i = 0; i < frames; ++i) {
        out << i << ',' << kind_to_char(pattern.kind_at(i)) << ',' << (1000 + 13 * i) << ','
            << (30 + (i % 10)) << '.' << (i % 100 < 10 ? "0" : "") << (i % 100) << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("trace round trip is the identity on records") {
    DyadicPattern pattern{16, 15};
    std::istringstream in(sample_trace(32, pattern));
    std::vector<TraceRecord> records = read_trace_csv(in);
    std::ostringstream out;
    write_trace_csv(out, records);
    std::istringstream in2(out.str());
    std::vector<TraceRecord> again = read_trace_csv(in2);
    REQUIRE(again.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(again[i].display_index == records[i].display_index);
        CHECK(again[i].kind == records[i].kind);
        CHECK(again[i].size_bits == records[i].size_bits);
        CHECK(again[i].quality == records[i].quality);
    }
}

TEST_CASE("deadlines follow the delay and frame-rate formula") {
    DyadicPattern pattern{16, 15};
    std::istringstream in(sample_trace(305, pattern));
    TimingConfig timing{30.0, 0.001, 1.0};
    Instance inst = load_trace(in, pattern, timing);
    REQUIRE(inst.dag.size() == 305);
    CHECK(inst.dag.frame(0).deadline == 1000);
    CHECK(inst.dag.frame(30).deadline == 2000);
    CHECK(inst.dag.frame(304).deadline == 1000 + 304000 / 30);
    CHECK(classify(inst.dag).label == StructureClass::QuasiSio);
}

TEST_CASE("trace errors") {
    DyadicPattern pattern{16, 3};
    TimingConfig timing;
    SUBCASE("empty file") {
        std::istringstream in("");
        CHECK_THROWS_AS(load_trace(in, pattern, timing), TraceError);
    }
    SUBCASE("bad header") {
        std::istringstream in("a,b,c,d\n");
        CHECK_THROWS_AS(load_trace(in, pattern, timing), TraceError);
    }
    SUBCASE("kind inconsistent with the pattern position") {
        std::istringstream in("display_index,kind,size_bits,quality\n0,P,100,30\n");
        CHECK_THROWS_AS(load_trace(in, pattern, timing), TraceError);
    }
    SUBCASE("frame count not matching the pattern") {
        std::ostringstream buf;
        buf << "display_index,kind,size_bits,quality\n";
        for (int i = 0; i < 18; ++i)
            buf << i << ',' << kind_to_char(pattern.kind_at(i)) << ",100,30\n";
        std::istringstream in(buf.str());
        CHECK_THROWS_AS(load_trace(in, pattern, timing), TraceError);
    }
    SUBCASE("non-contiguous indices") {
        std::istringstream in("display_index,kind,size_bits,quality\n1,I,100,30\n");
        CHECK_THROWS_AS(read_trace_csv(in), TraceError);
    }
    SUBCASE("slot duration above the frame period") {
        DyadicPattern p{4, 1};
        std::ostringstream buf;
        buf << "display_index,kind,size_bits,quality\n";
        for (int i = 0; i < 4; ++i)
            buf << i << ',' << kind_to_char(p.kind_at(i)) << ",100,30\n";
        std::istringstream in(buf.str());
        CHECK_THROWS_AS(load_trace(in, p, TimingConfig{30.0, 0.1, 1.0}), TraceError);
    }
}

TEST_CASE("synthetic instances are deterministic per seed") {
    SynthParams params;
    params.pattern = {4, 1};
    params.frame_count = 8;
    Instance a = synth_instance(0, params);
    Instance b = synth_instance(0, params);
    CHECK(instance_to_json(a) == instance_to_json(b));
    Instance c = synth_instance(1, params);
    CHECK(instance_to_json(a) != instance_to_json(c));
}

TEST_CASE("synthetic oracle-scale instance classifies quasi-SIO") {
    SynthParams params;
    params.pattern = {4, 1};
    params.frame_count = 8;
    Instance inst = synth_instance(3, params);
    CHECK(inst.dag.size() == 8);
    CHECK(classify(inst.dag).label == StructureClass::QuasiSio);
}

TEST_CASE("quality fixed-point parsing and rendering") {
    CHECK(quality_from_string("36.54") == 36540);
    CHECK(quality_from_string("0.1") == 100);
    CHECK(quality_from_string("5") == 5000);
    CHECK(quality_from_string("5.000") == 5000);
    CHECK_THROWS_AS(quality_from_string("1.2345"), ValidationError);
    CHECK_THROWS_AS(quality_from_string("abc"), ValidationError);
    CHECK(quality_to_string(36540) == "36.54");
    CHECK(quality_to_string(100) == "0.1");
    CHECK(quality_to_string(5000) == "5");
    CHECK(quality_from_double(36.54) == 36540);
}

TEST_CASE("instance JSON round trip") {
    SynthParams params;
    params.pattern = {8, 3};
    params.frame_count = 16;
    Instance inst = synth_instance(11, params);
    const std::string text = instance_to_json(inst);
    Instance back = instance_from_json(text);
    CHECK(instance_to_json(back) == text);
    CHECK(back.dag.edges() == inst.dag.edges());
    for (std::size_t i = 0; i < inst.dag.size(); ++i) {
        CHECK(back.dag.frame(static_cast<FrameId>(i)).size_bits ==
              inst.dag.frame(static_cast<FrameId>(i)).size_bits);
        CHECK(back.dag.frame(static_cast<FrameId>(i)).quality ==
              inst.dag.frame(static_cast<FrameId>(i)).quality);
        CHECK(back.dag.frame(static_cast<FrameId>(i)).deadline ==
              inst.dag.frame(static_cast<FrameId>(i)).deadline);
    }
}

TEST_CASE("forest dump shape") {
    DependencyDag dag = build_dyadic(4, 1, 2);
    const std::string doc = forest_to_json(build_forest(dag));
    CHECK(doc.find("\"trees\"") != std::string::npos);
    CHECK(doc.find("\"root\": 4") != std::string::npos);
}
