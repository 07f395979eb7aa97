#pragma once

#include <filesystem>
#include <string>

#include "wsnprio/harness/experiment.hpp"

namespace wsnprio::harness {

/// Writes summary.csv, aggregate.csv, throughput.csv, exec_order.csv,
/// trace.jsonl (first run), traces/<scheme>-<seed>[-n<k>].jsonl and
/// run_header.txt into `out_dir`, creating it if needed. Output depends only
/// on the report. Throws IoError.
void emit_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

std::string summary_csv(const ExperimentReport& report);
std::string aggregate_csv(const ExperimentReport& report);
std::string throughput_csv(const ExperimentReport& report);
std::string exec_order_csv(const ExperimentReport& report);
std::string run_header(const ExperimentReport& report);

}  // namespace wsnprio::harness
