#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/metrics.hpp"
#include "spgemm_hg/models.hpp"
#include "spgemm_hg/partitioner.hpp"
#include "sweep.hpp"

namespace {

using namespace spgemm_hg;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

std::string report_row(const CommReport& r, bool feasible) {
  return std::to_string(r.max_cut) + "," + std::to_string(r.connectivity) + "," +
         cli::format_ratio(r.achieved_epsilon) + "," + cli::format_ratio(r.achieved_delta) + "," +
         (feasible ? "1" : "0");
}

struct GenArgs {
  std::string kind;
  Index n = 0;
  double d = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_gen(const GenArgs& g) {
  NonzeroStructure s;
  if (g.kind == "stencil27") {
    if (g.n <= 0) throw InputError("stencil27 needs --N > 0");
    s = gen_stencil27(g.n);
  } else if (g.kind == "sa-prolongator") {
    if (g.n <= 0 || g.n % 3 != 0) throw InputError("sa-prolongator needs --N, a positive multiple of 3");
    s = gen_sa_prolongator(g.n);
  } else if (g.kind == "erdos-renyi") {
    if (g.n <= 0 || g.d < 0) throw InputError("erdos-renyi needs --n > 0 and --d >= 0");
    s = gen_erdos_renyi(g.n, g.d, g.seed);
  } else {
    throw InputError("unknown generator '" + g.kind + "'");
  }
  emit(g.out, write_matrix_market(s));
}

struct BuildArgs {
  std::string a_path;
  std::string b_path;
  std::string b_mode;
  std::string model = "fine";
  bool no_data = false;
  std::string mask_path;
  bool strip = false;
  std::string out;
};

void cmd_build(const BuildArgs& args) {
  NonzeroStructure a = load_matrix_market_file(args.a_path);
  NonzeroStructure b;
  if (!args.b_path.empty()) {
    if (!args.b_mode.empty()) throw InputError("give either a B file or --b, not both");
    b = load_matrix_market_file(args.b_path);
  } else if (args.b_mode == "transpose-a") {
    b = transpose(a);
  } else if (args.b_mode == "a" || args.b_mode.empty()) {
    b = a;
  } else {
    throw InputError("unknown --b mode '" + args.b_mode + "'");
  }

  ModelSpec spec;
  spec.kind = parse_model_kind(args.model);
  spec.with_data_vertices = !args.no_data;
  std::optional<NonzeroStructure> mask;
  if (!args.mask_path.empty()) mask = load_matrix_market_file(args.mask_path);

  if (args.strip) {
    StrippedPair s = strip_empty(a, b);
    if (mask) {
      std::vector<Index> new_row(a.n_rows(), -1), new_col(b.n_cols(), -1);
      for (std::size_t t = 0; t < s.row_map.size(); ++t) new_row[s.row_map[t]] = static_cast<Index>(t);
      for (std::size_t t = 0; t < s.col_map.size(); ++t) new_col[s.col_map[t]] = static_cast<Index>(t);
      if (mask->n_rows() != a.n_rows() || mask->n_cols() != b.n_cols()) {
        throw DimensionError("mask dimensions do not match the product");
      }
      std::vector<Coord> kept;
      for (const Coord& c : mask->coords()) {
        if (new_row[c.row] < 0 || new_col[c.col] < 0) {
          throw InputError("mask entry (" + std::to_string(c.row + 1) + "," + std::to_string(c.col + 1) +
                           ") is not a nonzero of the product");
        }
        kept.push_back({new_row[c.row], new_col[c.col]});
      }
      mask = NonzeroStructure::from_coords(s.a.n_rows(), s.b.n_cols(), std::move(kept));
    }
    a = std::move(s.a);
    b = std::move(s.b);
  }
  if (mask) {
    if (spec.kind != ModelKind::FineGrained && spec.kind != ModelKind::Masked) {
      throw InputError("--mask applies to the fine-grained model only");
    }
    spec.kind = ModelKind::Masked;
    spec.mask = std::move(mask);
  }

  const Hypergraph h = spec.kind == ModelKind::SpMVFineGrain ? build_spmv_finegrain(a) : build_model(a, b, spec);
  if (!args.out.empty()) emit(args.out, write_hgr(h));
  std::cout << h.num_vertices() << ' ' << h.num_nets() << ' ' << h.num_pins() << ' ' << h.total_comp() << '\n';
}

struct PartitionArgs {
  std::string hgr;
  PartId p = 2;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  std::string objective = "connectivity";
  bool oracle = false;
  std::string geometric;
  Index n = 0;
  std::string out;
};

void cmd_partition(const PartitionArgs& args) {
  const Hypergraph h = read_hgr_file(args.hgr);
  PartitionConfig cfg;
  cfg.p = args.p;
  cfg.epsilon = args.epsilon;
  cfg.seed = args.seed;
  cfg.objective = parse_objective(args.objective);

  Partition part;
  if (!args.geometric.empty()) {
    if (args.oracle) throw InputError("--oracle and --geometric are exclusive");
    GeometricScheme scheme;
    if (args.geometric == "row") {
      scheme = GeometricScheme::Row;
    } else if (args.geometric == "outer") {
      scheme = GeometricScheme::Outer;
    } else {
      throw InputError("unknown geometric scheme '" + args.geometric + "'");
    }
    part = geometric_partition(h, scheme, args.n, args.p);
  } else if (args.oracle) {
    part = partition_bruteforce(h, cfg).partition;
  } else {
    part = partition_multilevel(h, cfg).partition;
  }
  if (!args.out.empty()) emit(args.out, write_partition(part));
  std::cout << report_row(comm_report(h, part), is_balanced(h, part, cfg)) << '\n';
}

void cmd_evaluate(const std::string& hgr, const std::string& part_path, double epsilon) {
  const Hypergraph h = read_hgr_file(hgr);
  const Partition part = read_partition(read_file(part_path));
  PartitionConfig cfg;
  cfg.p = part.p;
  cfg.epsilon = epsilon;
  std::cout << report_row(comm_report(h, part), is_balanced(h, part, cfg)) << '\n';
}

void cmd_sweep(const std::string& config_path, const std::string& output) {
  cli::SweepConfig cfg = cli::parse_sweep_config(read_file(config_path));
  if (!output.empty()) cfg.output = output;
  std::ostringstream csv;
  cli::run_sweep(cfg, csv);
  emit(cfg.output, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergraph models of sparse matrix-matrix multiplication"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a sparsity pattern as a Matrix Market file");
  g->add_option("kind", gen.kind, "stencil27 | sa-prolongator | erdos-renyi")->required();
  g->add_option("--N", gen.n, "grid points per dimension (stencil27, sa-prolongator)");
  g->add_option("--n", gen.n, "matrix dimension (erdos-renyi)");
  g->add_option("--d", gen.d, "expected nonzeros per row (erdos-renyi)");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("-o,--output", gen.out, "output file (default stdout)");

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a hypergraph model of C = A*B");
  b->add_option("A", build.a_path, "A (Matrix Market)")->required();
  b->add_option("B", build.b_path, "B (Matrix Market)");
  b->add_option("--b", build.b_mode, "transpose-a | a, when no B file is given");
  b->add_option("--model", build.model, "fine | row | col | outer | mono-a | mono-b | mono-c | spmv | masked");
  b->add_flag("--no-data-vertices", build.no_data, "omit the nonzero (data) vertices");
  b->add_option("--mask", build.mask_path, "output entries to keep (Matrix Market)");
  b->add_flag("--strip", build.strip, "remove rows, columns and inner indices without multiplications");
  b->add_option("-o,--output", build.out, "hypergraph file");

  PartitionArgs part;
  auto* p = app.add_subcommand("partition", "Partition a hypergraph");
  p->add_option("hypergraph", part.hgr)->required();
  p->add_option("--p", part.p, "number of parts");
  p->add_option("--epsilon", part.epsilon, "computation imbalance tolerance");
  p->add_option("--seed", part.seed, "random seed");
  p->add_option("--objective", part.objective, "connectivity | max-cut");
  p->add_flag("--oracle", part.oracle, "exhaustive search (small hypergraphs only)");
  p->add_option("--geometric", part.geometric, "row | outer subcube partition of the model problem");
  p->add_option("--N", part.n, "grid size for --geometric");
  p->add_option("-o,--output", part.out, "partition file");

  std::string eval_hgr, eval_part;
  double eval_eps = 0.01;
  auto* e = app.add_subcommand("evaluate", "Report the communication cost of a partition");
  e->add_option("hypergraph", eval_hgr)->required();
  e->add_option("partition", eval_part)->required();
  e->add_option("--epsilon", eval_eps, "tolerance used for the feasible column");

  std::string sweep_cfg, sweep_out;
  auto* s = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  s->add_option("config", sweep_cfg)->required();
  s->add_option("-o,--output", sweep_out, "CSV file (overrides output= in the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*g) cmd_gen(gen);
    if (*b) cmd_build(build);
    if (*p) cmd_partition(part);
    if (*e) cmd_evaluate(eval_hgr, eval_part, eval_eps);
    if (*s) cmd_sweep(sweep_cfg, sweep_out);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
