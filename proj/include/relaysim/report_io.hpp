#pragma once

#include <string>

#include "relaysim/scenario_file.hpp"
#include "relaysim/simcore.hpp"

namespace relaysim::report {

/// id,parent,miner,time,height,on_main_chain
std::string blocks_csv(const simcore::SimReport& report);

/// id,created,confirmed,latency (empty cells for unconfirmed transactions)
std::string transactions_csv(const simcore::SimReport& report);

/// `key = value` lines: orphan_rate, fork_count, per-node shares and, when a
/// plan is given, b_min and the feasibility verdict.
std::string summary_document(const simcore::SimReport& report,
                             const scenario::PlanResult* plan = nullptr);

/// Same content as the summary document, as one JSON object on one line.
std::string summary_json_line(const simcore::SimReport& report,
                              const scenario::PlanResult* plan = nullptr);

/// Human table: orphan rate, fork count and per-node dominance.
std::string summary_table(const simcore::SimReport& report);

}  // namespace relaysim::report
