#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "polar/explorer.hpp"
#include "polar/oracle.hpp"
#include "polar/spectrum.hpp"
#include "polar/witness.hpp"

namespace polar::cli {

// Instance documents are plain JSON: schema_version, n, an n x n "vectors"
// array (rows are the unit vectors), and optional metadata. Numbers are
// emitted with 17 significant digits, so parse-then-serialize reproduces
// every double exactly.
struct InstanceFile {
  int schema_version = 1;
  int n = 0;
  Eigen::MatrixXd vectors;
  std::optional<std::string> label;
  std::optional<std::uint64_t> seed;
};

InstanceFile read_instance(std::istream& in);
InstanceFile read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const InstanceFile& f);

// Throws InvalidArgument naming the offending row when a vector is not unit.
VectorSystem to_system(const InstanceFile& f);

// One JSON token for a double: a plain number with 17 significant digits,
// or the quoted strings "-inf"/"inf" for infinities. NaN is never emitted;
// hitting one throws NumericalFailure.
std::string json_number(double v);

const char* method_name(OracleMethod m);

// Everything a command may want to report; absent sections are omitted from
// the output. Field order is fixed so identical runs are byte identical
// (timing_seconds, always the last line, is the one legitimate difference).
struct Report {
  std::string command;
  std::optional<InstanceFile> instance;
  std::optional<BoundsReport> bounds;
  std::optional<WitnessResult> witness;
  bool include_trace = false;
  std::optional<VerificationRecord> verification;
  std::optional<OracleResult> oracle;
  std::optional<std::uint64_t> oracle_seed;
  std::optional<ExplorerReport> explorer;
  double timing_seconds = 0.0;
};

void write_report(std::ostream& out, const Report& r);

}  // namespace polar::cli
