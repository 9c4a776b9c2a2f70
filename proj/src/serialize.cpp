#include "vidsched/serialize.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace vidsched {

using nlohmann::json;

std::string instance_to_json(const Instance& instance) {
    json frames = json::array();
    for (const Frame& f : instance.dag.frames()) {
        frames.push_back({{"id", f.id},
                          {"kind", std::string(1, kind_to_char(f.kind))},
                          {"size_bits", f.size_bits},
                          {"deadline", f.deadline},
                          {"quality", quality_to_double(f.quality)}});
    }
    json edges = json::array();
    for (const Edge& e : instance.dag.edges()) edges.push_back({e.first, e.second});
    json doc{{"frames", frames},
             {"edges", edges},
             {"timing",
              {{"fps", instance.timing.fps},
               {"slot_duration_s", instance.timing.slot_duration_s},
               {"initial_delay_s", instance.timing.initial_delay_s}}}};
    return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid instance JSON: ") + e.what());
    }
    try {
        std::vector<Frame> frames;
        for (const json& jf : doc.at("frames")) {
            Frame f;
            f.id = jf.at("id").get<FrameId>();
            const std::string kind = jf.at("kind").get<std::string>();
            if (kind.size() != 1) throw ValidationError("bad frame kind: " + kind);
            f.kind = kind_from_char(kind[0]);
            f.size_bits = jf.at("size_bits").get<Bits>();
            f.deadline = jf.at("deadline").get<Slot>();
            f.quality = quality_from_double(jf.at("quality").get<double>());
            frames.push_back(f);
        }
        std::vector<Edge> edges;
        for (const json& je : doc.at("edges"))
            edges.emplace_back(je.at(0).get<FrameId>(), je.at(1).get<FrameId>());

        TimingConfig timing;
        if (doc.contains("timing")) {
            const json& jt = doc.at("timing");
            timing.fps = jt.value("fps", timing.fps);
            timing.slot_duration_s = jt.value("slot_duration_s", timing.slot_duration_s);
            timing.initial_delay_s = jt.value("initial_delay_s", timing.initial_delay_s);
        }
        return Instance{DependencyDag(std::move(frames), edges), timing};
    } catch (const json::exception& e) {
        throw ValidationError(std::string("invalid instance JSON: ") + e.what());
    }
}

Instance instance_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

std::string forest_to_json(const MbfsForest& forest) {
    json trees = json::array();
    for (const MbfsTree& tree : forest) {
        json edges = json::array();
        for (FrameId u : tree.nodes)
            for (FrameId c : tree.children[static_cast<std::size_t>(u)])
                edges.push_back({u, c});
        trees.push_back({{"root", tree.root}, {"edges", edges}});
    }
    return json{{"trees", trees}}.dump(2) + "\n";
}

namespace {

json schedule_to_json(const std::vector<ScheduledFrame>& schedule,
                      const std::vector<FrameStatus>& status) {
    json entries = json::array();
    for (const ScheduledFrame& s : schedule) {
        entries.push_back({{"frame", s.frame},
                           {"start", s.start},
                           {"end", s.end},
                           {"status", to_string(s.status)}});
    }
    json dropped = json::array();
    for (std::size_t f = 0; f < status.size(); ++f)
        if (status[f] == FrameStatus::Dropped) dropped.push_back(static_cast<FrameId>(f));
    return json{{"schedule", entries}, {"dropped", dropped}};
}

}  // namespace

std::string solution_to_json(const DpSolution& solution) {
    json doc = schedule_to_json(solution.schedule, solution.status);
    doc["reward"] = quality_to_double(solution.optimal_reward);
    return doc.dump(2) + "\n";
}

std::string baseline_to_json(const BaselineResult& result, const DependencyDag& dag,
                             const LinkConfig& link) {
    const SimulationResult sim = simulate(result.sequence, dag, link);
    std::vector<ScheduledFrame> schedule;
    for (FrameId f : result.sequence.order) {
        schedule.push_back({f, *sim.start[static_cast<std::size_t>(f)],
                            *sim.finish[static_cast<std::size_t>(f)],
                            sim.status[static_cast<std::size_t>(f)]});
    }
    json doc = schedule_to_json(schedule, sim.status);
    doc["reward"] = quality_to_double(result.reward);
    doc["algo"] = to_string(result.name);
    if (result.pbedf_block_size) doc["pbedf_M"] = *result.pbedf_block_size;
    return doc.dump(2) + "\n";
}

void write_universal_order(std::ostream& out, const UniversalSequence& universal) {
    for (FrameId f : universal.order) out << f << '\n';
}

std::string error_to_json(const std::string& kind, const std::string& message) {
    return json{{"error", {{"kind", kind}, {"message", message}}}}.dump() + "\n";
}

}  // namespace vidsched
