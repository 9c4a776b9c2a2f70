#ifndef VIDSCHED_SERIALIZE_HPP
#define VIDSCHED_SERIALIZE_HPP

#include <iosfwd>
#include <string>

#include "vidsched/baselines.hpp"
#include "vidsched/dp.hpp"
#include "vidsched/trace.hpp"

namespace vidsched {

/// Instance JSON: {"frames":[{id,kind,size_bits,deadline,quality}...],
/// "edges":[[parent,child]...], "timing":{...}} with frames ascending by id
/// and edges ascending by (parent, child).
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);
Instance instance_from_json_file(const std::string& path);

/// Forest dump: {"trees":[{"root":r,"edges":[[parent,child]...]}...]} with
/// edges in stored (deadline) child order.
std::string forest_to_json(const MbfsForest& forest);

/// Solution JSON: {"reward":..., "schedule":[{frame,start,end,status}...],
/// "dropped":[ids...]} plus "pbedf_M" when present.
std::string solution_to_json(const DpSolution& solution);
std::string baseline_to_json(const BaselineResult& result, const DependencyDag& dag,
                             const LinkConfig& link);

/// One frame id per line.
void write_universal_order(std::ostream& out, const UniversalSequence& universal);

std::string error_to_json(const std::string& kind, const std::string& message);

}  // namespace vidsched

#endif
