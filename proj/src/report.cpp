/*******************************************************************************
 * @file:   report.cpp
 ******************************************************************************/
#include "ilprefine/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <tuple>

#include <json.hpp>

#include "ilprefine/graph_io.h"

namespace ilprefine {

namespace {

using nlohmann::json;

json to_json(const RunRecord &r) {
  return json{{"instance", r.instance},   {"k", r.k},
              {"eps", r.epsilon},         {"strategy", r.strategy},
              {"preset", r.preset},       {"input_cut", r.input_cut},
              {"output_cut", r.output_cut}, {"improved", r.improved},
              {"status", r.status},       {"time_s", r.time_s},
              {"nodes", r.nodes},         {"kept", r.kept},
              {"nonzeros", r.nonzeros},   {"hit_time_limit", r.hit_time_limit}};
}

RunRecord from_json(const json &j) {
  RunRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.k = j.at("k").get<PartitionID>();
  r.epsilon = j.at("eps").get<double>();
  r.strategy = j.at("strategy").get<std::string>();
  r.preset = j.value("preset", std::string{});
  r.input_cut = j.at("input_cut").get<double>();
  r.output_cut = j.at("output_cut").get<double>();
  r.improved = j.at("improved").get<bool>();
  r.status = j.at("status").get<std::string>();
  r.time_s = j.at("time_s").get<double>();
  r.nodes = j.at("nodes").get<std::uint64_t>();
  r.kept = j.value("kept", std::uint64_t{0});
  r.nonzeros = j.value("nonzeros", std::uint64_t{0});
  r.hit_time_limit = j.value("hit_time_limit", r.status == "FeasibleTimeLimit");
  return r;
}

std::string csv_field(const std::string &value) {
  if (value.find_first_of(",\"\n") == std::string::npos) {
    return value;
  }
  std::string quoted = "\"";
  for (const char c : value) {
    quoted += c;
    if (c == '"') {
      quoted += '"';
    }
  }
  return quoted + '"';
}

double geometric_mean(const std::vector<double> &values) {
  if (values.empty()) {
    return 0.0;
  }
  double log_sum = 0.0;
  for (const double v : values) {
    if (v <= 0.0) {
      return 0.0;
    }
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

} // namespace

std::string to_json_line(const RunRecord &record) {
  return to_json(record).dump();
}

RunRecord parse_json_line(const std::string_view line) {
  try {
    return from_json(json::parse(line));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::MalformedLine, std::string("invalid run record: ") + e.what());
  }
}

void write_records_jsonl(const std::vector<RunRecord> &records, std::ostream &out) {
  for (const auto &r : records) {
    out << to_json_line(r) << '\n';
  }
}

std::vector<RunRecord> read_records_jsonl(std::istream &in) {
  std::vector<RunRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      records.push_back(parse_json_line(line));
    } catch (const Error &e) {
      throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::vector<RunRecord> read_records_jsonl(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  }
  return read_records_jsonl(in);
}

void write_records_csv(const std::vector<RunRecord> &records, std::ostream &out) {
  out << "instance,k,eps,strategy,input_cut,output_cut,improved,status,time_s,nodes\n";
  for (const auto &r : records) {
    out << csv_field(r.instance) << ',' << r.k << ',' << format_number(r.epsilon) << ','
        << csv_field(r.strategy) << ',' << format_number(r.input_cut) << ','
        << format_number(r.output_cut) << ',' << (r.improved ? "true" : "false") << ','
        << csv_field(r.status) << ',' << format_number(r.time_s) << ',' << r.nodes << '\n';
  }
}

PerformanceReport report_performance(const std::vector<RunRecord> &records) {
  struct Cell {
    double time_sum = 0;
    double cut_sum = 0;
    std::size_t runs = 0;
    bool timed_out = false;
  };
  using InstanceKey = std::tuple<std::string, PartitionID, double>;
  std::map<InstanceKey, std::map<std::string, Cell>> table;
  for (const auto &r : records) {
    Cell &cell = table[{r.instance, r.k, r.epsilon}][r.algorithm()];
    cell.time_sum += r.time_s;
    cell.cut_sum += r.output_cut;
    ++cell.runs;
    cell.timed_out |= r.hit_time_limit || r.status == "FeasibleTimeLimit";
  }

  PerformanceReport report;
  std::map<std::string, std::vector<double>> mean_times;
  std::map<std::string, std::vector<double>> mean_cuts;
  for (const auto &[key, cells] : table) {
    double best_time = std::numeric_limits<double>::infinity();
    double best_cut = std::numeric_limits<double>::infinity();
    for (const auto &[algorithm, cell] : cells) {
      const double n = static_cast<double>(cell.runs);
      if (!cell.timed_out) {
        best_time = std::min(best_time, cell.time_sum / n);
      }
      best_cut = std::min(best_cut, cell.cut_sum / n);
    }
    for (const auto &[algorithm, cell] : cells) {
      const double n = static_cast<double>(cell.runs);
      const double time = cell.time_sum / n;
      const double cut = cell.cut_sum / n;
      AlgorithmPerformance &perf = report.algorithms[algorithm];
      ++perf.instances;
      if (cell.timed_out) {
        perf.time_ratios.push_back(-1.0);
      } else {
        perf.time_ratios.push_back(time > 0 ? best_time / time : 1.0);
      }
      perf.cut_ratios.push_back(cut > 0 ? best_cut / cut : 1.0);
      mean_times[algorithm].push_back(time);
      mean_cuts[algorithm].push_back(cut);
    }
  }
  for (auto &[algorithm, perf] : report.algorithms) {
    std::sort(perf.time_ratios.begin(), perf.time_ratios.end());
    std::sort(perf.cut_ratios.begin(), perf.cut_ratios.end());
    perf.geomean_time = geometric_mean(mean_times[algorithm]);
    perf.geomean_cut = geometric_mean(mean_cuts[algorithm]);
  }
  return report;
}

void write_performance_csv(const PerformanceReport &report, std::ostream &out) {
  out << "section,algorithm,index,value\n";
  for (const auto &[algorithm, perf] : report.algorithms) {
    const std::string name = csv_field(algorithm);
    for (std::size_t i = 0; i < perf.time_ratios.size(); ++i) {
      out << "time_ratio," << name << ',' << i << ',' << format_number(perf.time_ratios[i]) << '\n';
    }
    for (std::size_t i = 0; i < perf.cut_ratios.size(); ++i) {
      out << "cut_ratio," << name << ',' << i << ',' << format_number(perf.cut_ratios[i]) << '\n';
    }
    out << "geomean_time," << name << ",," << format_number(perf.geomean_time) << '\n';
    out << "geomean_cut," << name << ",," << format_number(perf.geomean_cut) << '\n';
  }
}

} // namespace ilprefine
