#pragma once

#include "schedule.hpp"
#include "verify.hpp"

#include <string>
#include <vector>

namespace hypershift {

/// Hash of the algorithm versions of the schedule and target enumeration.
std::string version_hash();

std::string config_json(const ScheduleConfig& cfg);

std::string targets_csv(Index from, Index to);
std::string entries_csv(Schedule& s, Index from, Index to);
/// Step summaries 1..upto. Stops at the first step that cannot be built;
/// `reached` tells how many steps made it.
std::string steps_json(Schedule& s, unsigned upto, unsigned* reached);
std::string blocks_csv(HyperVector& h, Index upto);
std::string materialize_csv(HyperVector& h, std::size_t blocks, std::size_t len);
std::string witness_json(const Schedule& s, const Witness& w);
std::string covering_json(Schedule& s, Index l, const std::string& sv, const std::string& delta,
                          Index k);
std::string demo_csv(const std::vector<DemoCell>& cells);
std::string divergence_json(const Schedule& s, const DivergenceReport& r);

}  // namespace hypershift
