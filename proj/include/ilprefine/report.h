/*******************************************************************************
 * Run records (JSON lines, CSV) and performance summaries over many runs.
 *
 * @file:   report.h
 ******************************************************************************/
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ilprefine/refine.h"

namespace ilprefine {

std::string to_json_line(const RunRecord &record);
RunRecord parse_json_line(std::string_view line);

void write_records_jsonl(const std::vector<RunRecord> &records, std::ostream &out);
// Blank lines are skipped. Throws MalformedLine with the line number.
std::vector<RunRecord> read_records_jsonl(std::istream &in);
std::vector<RunRecord> read_records_jsonl(const std::string &path);

// Columns: instance,k,eps,strategy,input_cut,output_cut,improved,status,time_s,nodes
void write_records_csv(const std::vector<RunRecord> &records, std::ostream &out);

struct AlgorithmPerformance {
  // One entry per instance the algorithm was run on, sorted ascending.
  // time ratio = fastest time on the instance / own time, -1 for runs that
  // hit the time limit. cut ratio = best output cut / own output cut.
  std::vector<double> time_ratios;
  std::vector<double> cut_ratios;
  double geomean_time = 0;
  double geomean_cut = 0;
  std::size_t instances = 0;
};

struct PerformanceReport {
  std::map<std::string, AlgorithmPerformance> algorithms;
};

// Runs are grouped by (instance, k, eps) and by RunRecord::algorithm(); repeated
// runs of one algorithm on one instance are averaged first.
PerformanceReport report_performance(const std::vector<RunRecord> &records);

// Long format: section,algorithm,index,value
void write_performance_csv(const PerformanceReport &report, std::ostream &out);

} // namespace ilprefine
