#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spgemm_hg/models.hpp"
#include "spgemm_hg/partitioner.hpp"

namespace spgemm_hg::cli {

// One instance line: "<source>[@p,p,...]". Sources:
//   mtx:a.mtx[,b.mtx]   B defaults to A
//   mtx-aat:a.mtx       B = A^T
//   amg-ap:N            stencil A times prolongator P
//   amg-ptap:N          P^T times (A P)
//   er:n:d:seed         Erdos-Renyi A, B = A
struct SweepInstance {
  std::string source;
  std::vector<PartId> p_override;
};

struct SweepConfig {
  std::vector<SweepInstance> instances;
  std::vector<ModelKind> models;
  std::vector<PartId> p_list;
  std::vector<std::uint64_t> seeds{0};
  double epsilon = 0.01;
  Objective objective = Objective::Connectivity;
  bool data_vertices = false;
  unsigned threads = 1;
  std::string output;  // empty: stdout
};

// Flat "key=value" lines, repeated keys append to lists, '#' comments.
// Throws InputError naming the offending line or token.
SweepConfig parse_sweep_config(std::string_view text);

struct InstancePair {
  NonzeroStructure a;
  NonzeroStructure b;
};

// Loads or generates the operands of an instance and strips empty rows,
// columns and inner indices.
InstancePair load_instance(const std::string& source);

inline constexpr std::string_view kCsvHeader =
    "instance,model,p,seed,max_cut,connectivity,eps_achieved,delta_achieved,feasible,runtime_ms";

// Runs every grid point and writes the CSV (header included) in grid order.
void run_sweep(const SweepConfig& cfg, std::ostream& out);

std::string format_ratio(double x);

}  // namespace spgemm_hg::cli
