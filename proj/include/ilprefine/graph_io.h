/*******************************************************************************
 * METIS/Chaco graph files and plain partition files.
 *
 * Graph files are 1-indexed: a header line "n m [fmt [ncon]]" followed by one
 * adjacency line per vertex. fmt is read as three digits (vertex sizes, vertex
 * weights, edge weights). Lines starting with '%' are comments. Partition
 * files hold one 0-indexed block id per line.
 *
 * @file:   graph_io.h
 ******************************************************************************/
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ilprefine/graph.h"

namespace ilprefine {

Graph load_graph(const std::string &path);
Graph parse_metis(std::istream &in);

void write_metis(const Graph &graph, std::ostream &out);
void write_metis(const Graph &graph, const std::string &path);

std::vector<PartitionID> read_partition(const std::string &path);
std::vector<PartitionID> parse_partition(std::istream &in);

void write_partition(std::span<const PartitionID> assignment, std::ostream &out);
void write_partition(std::span<const PartitionID> assignment, const std::string &path);

// Shortest decimal form that reads back to the same double.
std::string format_number(double value);

} // namespace ilprefine
