#include "vidsched/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "vidsched/baselines.hpp"
#include "vidsched/dp.hpp"
#include "vidsched/oracle.hpp"
#include "vidsched/serialize.hpp"
#include "vidsched/trace.hpp"

namespace vidsched {

namespace {

std::vector<Bits> parse_capacities(const std::string& text) {
    std::vector<Bits> caps;
    if (text.find(':') != std::string::npos) {
        long long lo, hi, step;
        if (std::sscanf(text.c_str(), "%lld:%lld:%lld", &lo, &hi, &step) != 3)
            throw ValidationError("capacity range must be lo:hi:step");
        if (lo < 1 || hi < lo || step < 1) throw ValidationError("bad capacity range " + text);
        for (long long c = lo; c <= hi; c += step) caps.push_back(c);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            caps.push_back(std::stoll(item));
        }
    }
    if (caps.empty()) throw ValidationError("no capacities given");
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (caps[i] < 1) throw ValidationError("capacities must be positive");
        if (i > 0 && caps[i] <= caps[i - 1])
            throw ValidationError("capacity grid must be strictly increasing");
    }
    return caps;
}

std::vector<double> parse_delays(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
        if (out.back() < 0) throw ValidationError("delays must be non-negative");
    }
    if (out.empty()) throw ValidationError("no delays given");
    return out;
}

int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    int n = static_cast<int>(hw == 0 ? 1 : hw);
    n = std::min(n, 4);
    if (const char* env = std::getenv("VIDSCHED_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) n = v;
    }
    return n;
}

void parallel_for(int jobs, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || jobs <= 1) {
        for (int i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int w = 0; w < std::min(threads, jobs); ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
                next.store(jobs);
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string format_avg_quality(Quality total, std::size_t frames) {
    char buf[64];
    const double avg = static_cast<double>(total) /
                       (static_cast<double>(kQualityScale) * static_cast<double>(frames));
    std::snprintf(buf, sizeof buf, "%.4f", avg);
    return buf;
}

void write_out(const std::string& path, const std::string& data, std::ostream& fallback) {
    if (path.empty()) {
        fallback << data;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write to " + path);
    f << data;
}

constexpr const char* kAlgoNames[] = {"optimal", "edf", "doedf", "pbedf"};

struct SweepCell {
    Quality reward[4] = {0, 0, 0, 0};
};

/// Rewards for every (delay, capacity) cell, cells computed in parallel,
/// indexed deterministically.
std::vector<SweepCell> run_grid(const Instance& instance, const std::vector<double>& delays,
                                const std::vector<Bits>& caps) {
    std::vector<PreparedInstance> prepared;
    prepared.reserve(delays.size());
    for (double d : delays) {
        prepared.emplace_back(with_deadlines(instance.dag, instance.timing.fps,
                                             instance.timing.slot_duration_s, d));
        if (prepared.back().label.label == StructureClass::Neither)
            throw UnsupportedStructure(prepared.back().label.witness_node,
                                       prepared.back().label.witness_reason);
    }

    const int jobs = static_cast<int>(delays.size() * caps.size());
    std::vector<SweepCell> cells(static_cast<std::size_t>(jobs));
    parallel_for(jobs, thread_budget(), [&](int idx) {
        const std::size_t di = static_cast<std::size_t>(idx) / caps.size();
        const std::size_t ci = static_cast<std::size_t>(idx) % caps.size();
        const PreparedInstance& prep = prepared[di];
        LinkConfig link;
        link.capacity_bits_per_slot = caps[ci];
        link.slot_duration_s = instance.timing.slot_duration_s;
        link.initial_delay_s = delays[di];
        SweepCell& cell = cells[static_cast<std::size_t>(idx)];
        cell.reward[0] = prep.solve(link).optimal_reward;
        cell.reward[1] = edf(prep.dag, link).reward;
        cell.reward[2] = doedf(prep.dag, link, prep.universal).reward;
        cell.reward[3] = pbedf_best(prep.dag, link).reward;
    });
    return cells;
}

int cmd_gen(const std::string& pattern_text, int gops, int frames, std::uint64_t seed,
            double fps, double slot_ms, double delay, const std::string& out_path,
            std::ostream& out) {
    SynthParams params;
    params.pattern = parse_pattern(pattern_text);
    params.frame_count =
        frames > 0 ? frames : static_cast<FrameId>(gops) * params.pattern.gop_size;
    params.timing.fps = fps;
    params.timing.slot_duration_s = slot_ms / 1000.0;
    params.timing.initial_delay_s = delay;
    const Instance instance = synth_instance(seed, params);
    write_out(out_path, instance_to_json(instance), out);
    return 0;
}

int cmd_classify(const std::string& instance_path, const std::string& universal_path,
                 std::ostream& out) {
    const Instance instance = instance_from_json_file(instance_path);
    const Classification c = classify(instance.dag);
    std::ostringstream doc;
    doc << "{\"class\":\"" << to_string(c.label) << "\"";
    if (c.label == StructureClass::Neither) {
        doc << ",\"witness\":{\"node\":" << c.witness_node << ",\"reason\":\""
            << c.witness_reason << "\"}";
    } else {
        doc << ",\"witness\":null";
    }
    doc << "}\n";
    out << doc.str();
    if (!universal_path.empty()) {
        PreparedInstance prep(instance.dag);
        if (prep.label.label == StructureClass::Neither)
            throw UnsupportedStructure(prep.label.witness_node, prep.label.witness_reason);
        std::ofstream f(universal_path);
        if (!f) throw ValidationError("cannot write to " + universal_path);
        write_universal_order(f, prep.universal);
    }
    return 0;
}

int cmd_schedule(const std::string& instance_path, Bits capacity, double delay, bool has_delay,
                 const std::string& algo, int pbedf_m, const std::string& out_path,
                 std::ostream& out) {
    Instance instance = instance_from_json_file(instance_path);
    DependencyDag dag =
        has_delay ? with_deadlines(instance.dag, instance.timing.fps,
                                   instance.timing.slot_duration_s, delay)
                  : instance.dag;
    LinkConfig link;
    link.capacity_bits_per_slot = capacity;
    link.slot_duration_s = instance.timing.slot_duration_s;
    link.initial_delay_s = has_delay ? delay : instance.timing.initial_delay_s;

    std::string doc;
    if (algo == "optimal") {
        doc = solution_to_json(solve(dag, link));
    } else if (algo == "edf") {
        doc = baseline_to_json(edf(dag, link), dag, link);
    } else if (algo == "doedf") {
        PreparedInstance prep(dag);
        if (prep.label.label == StructureClass::Neither)
            throw UnsupportedStructure(prep.label.witness_node, prep.label.witness_reason);
        doc = baseline_to_json(doedf(dag, link, prep.universal), dag, link);
    } else if (algo == "pbedf") {
        doc = baseline_to_json(pbedf_m > 0 ? pbedf(dag, link, pbedf_m) : pbedf_best(dag, link),
                               dag, link);
    } else {
        throw ValidationError("unknown algorithm: " + algo);
    }
    write_out(out_path, doc, out);
    return 0;
}

int cmd_sweep(const std::string& instance_path, const std::string& caps_text,
              const std::string& delays_text, const std::string& out_path, std::ostream& out) {
    const Instance instance = instance_from_json_file(instance_path);
    const auto caps = parse_capacities(caps_text);
    const auto delays = parse_delays(delays_text);
    const auto cells = run_grid(instance, delays, caps);

    std::ostringstream csv;
    csv << "algo,delay,capacity,avg_quality\n";
    for (int a = 0; a < 4; ++a) {
        for (std::size_t di = 0; di < delays.size(); ++di) {
            for (std::size_t ci = 0; ci < caps.size(); ++ci) {
                const SweepCell& cell = cells[di * caps.size() + ci];
                csv << kAlgoNames[a] << ',' << delays[di] << ',' << caps[ci] << ','
                    << format_avg_quality(cell.reward[a], instance.dag.size()) << '\n';
            }
        }
    }
    write_out(out_path, csv.str(), out);
    return 0;
}

int cmd_compare(const std::string& instance_path, const std::string& caps_text,
                const std::string& delays_text, const std::string& out_path, std::ostream& out) {
    const Instance instance = instance_from_json_file(instance_path);
    const auto caps = parse_capacities(caps_text);
    const auto delays = parse_delays(delays_text);
    const auto cells = run_grid(instance, delays, caps);

    std::ostringstream csv;
    csv << "algo,delay,dominated_by_optimal,monotone_in_capacity,max_shortfall\n";
    for (int a = 0; a < 4; ++a) {
        for (std::size_t di = 0; di < delays.size(); ++di) {
            bool dominated = true;
            bool monotone = true;
            Quality shortfall = 0;
            for (std::size_t ci = 0; ci < caps.size(); ++ci) {
                const SweepCell& cell = cells[di * caps.size() + ci];
                if (cell.reward[a] > cell.reward[0]) dominated = false;
                shortfall = std::max(shortfall, cell.reward[0] - cell.reward[a]);
                if (ci > 0) {
                    const SweepCell& prev = cells[di * caps.size() + ci - 1];
                    if (cell.reward[a] < prev.reward[a]) monotone = false;
                }
            }
            csv << kAlgoNames[a] << ',' << delays[di] << ',' << (dominated ? "true" : "false")
                << ',' << (monotone ? "true" : "false") << ','
                << quality_to_string(shortfall) << '\n';
        }
    }
    write_out(out_path, csv.str(), out);
    return 0;
}

int cmd_lossless(const std::string& instance_path, double delay, bool has_delay,
                 std::ostream& out) {
    const Instance instance = instance_from_json_file(instance_path);
    DependencyDag dag =
        has_delay ? with_deadlines(instance.dag, instance.timing.fps,
                                   instance.timing.slot_duration_s, delay)
                  : instance.dag;
    LinkConfig proto;
    proto.slot_duration_s = instance.timing.slot_duration_s;
    out << lossless_capacity(dag, proto) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal frame-transmission scheduling for hierarchically predicted video"};
    app.require_subcommand(1);

    std::string pattern = "G16B3";
    int gops = 1;
    int frames = 0;
    std::uint64_t seed = 0;
    double fps = 30.0, slot_ms = 1.0, delay = 1.0;
    std::string out_path;

    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic instance (JSON)");
    gen->add_option("--pattern", pattern, "Dyadic pattern, e.g. G16B3")->required();
    gen->add_option("--gops", gops, "Number of GOPs");
    gen->add_option("--frames", frames, "Frame count (overrides --gops; may add a trailing I)");
    gen->add_option("--seed", seed, "Generator seed");
    gen->add_option("--fps", fps, "Frames per second");
    gen->add_option("--slot-ms", slot_ms, "Slot duration in milliseconds");
    gen->add_option("--delay", delay, "Initial playback delay in seconds");
    gen->add_option("-o,--output", out_path, "Output file (default stdout)");

    std::string instance_path;
    std::string universal_path;
    CLI::App* cls = app.add_subcommand("classify", "Classify an instance (SIO / quasi-SIO / neither)");
    cls->add_option("instance", instance_path, "Instance JSON")->required();
    cls->add_option("--emit-universal", universal_path,
                    "Write the universal transmission order, one frame id per line");

    Bits capacity = 0;
    std::string algo = "optimal";
    int pbedf_m = 0;
    double sched_delay = 0.0;
    CLI::App* sch = app.add_subcommand("schedule", "Compute a schedule (JSON)");
    sch->add_option("instance", instance_path, "Instance JSON")->required();
    sch->add_option("--capacity", capacity, "Link capacity in bits per slot")->required();
    CLI::Option* delay_opt = sch->add_option("--delay", sched_delay, "Initial delay in seconds");
    sch->add_option("--algo", algo, "optimal|edf|doedf|pbedf");
    sch->add_option("--pbedf-m", pbedf_m, "Fixed PBEDF block size (default: exhaustive search)");
    sch->add_option("-o,--output", out_path, "Output file (default stdout)");

    std::string caps_text, delays_text = "0.1,1,5";
    CLI::App* swp = app.add_subcommand("sweep", "Reward vs capacity grid (CSV)");
    swp->add_option("instance", instance_path, "Instance JSON")->required();
    swp->add_option("--capacities", caps_text, "lo:hi:step or comma list (bits/slot)")->required();
    swp->add_option("--delays", delays_text, "Comma list of initial delays in seconds");
    swp->add_option("-o,--output", out_path, "Output file (default stdout)");

    CLI::App* cmp = app.add_subcommand("compare", "Dominance and monotonicity flags (CSV)");
    cmp->add_option("instance", instance_path, "Instance JSON")->required();
    cmp->add_option("--capacities", caps_text, "lo:hi:step or comma list (bits/slot)")->required();
    cmp->add_option("--delays", delays_text, "Comma list of initial delays in seconds");
    cmp->add_option("-o,--output", out_path, "Output file (default stdout)");

    double ll_delay = 0.0;
    CLI::App* lls = app.add_subcommand("lossless", "Smallest capacity with lossless optimal reward");
    lls->add_option("instance", instance_path, "Instance JSON")->required();
    CLI::Option* ll_delay_opt = lls->add_option("--delay", ll_delay, "Initial delay in seconds");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed())
            return cmd_gen(pattern, gops, frames, seed, fps, slot_ms, delay, out_path, out);
        if (cls->parsed()) return cmd_classify(instance_path, universal_path, out);
        if (sch->parsed())
            return cmd_schedule(instance_path, capacity, sched_delay, delay_opt->count() > 0,
                                algo, pbedf_m, out_path, out);
        if (swp->parsed()) return cmd_sweep(instance_path, caps_text, delays_text, out_path, out);
        if (cmp->parsed())
            return cmd_compare(instance_path, caps_text, delays_text, out_path, out);
        if (lls->parsed())
            return cmd_lossless(instance_path, ll_delay, ll_delay_opt->count() > 0, out);
    } catch (const UnsupportedStructure& e) {
        out << error_to_json("unsupported-structure", e.what());
        return 1;
    } catch (const TraceError& e) {
        out << error_to_json("trace", e.what());
        return 1;
    } catch (const ValidationError& e) {
        out << error_to_json("validation", e.what());
        return 1;
    } catch (const Error& e) {
        out << error_to_json("error", e.what());
        return 1;
    }
    return 2;
}

}  // namespace vidsched
