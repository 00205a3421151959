#include "sweep.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <thread>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/metrics.hpp"

namespace spgemm_hg::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, const std::string& context) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw InputError(context + ": bad number '" + std::string(token) + "'");
  }
  return value;
}

double parse_double(std::string_view token, const std::string& context) {
  try {
    std::size_t used = 0;
    const double x = std::stod(std::string(token), &used);
    if (used == token.size()) return x;
  } catch (const std::exception&) {
  }
  throw InputError(context + ": bad number '" + std::string(token) + "'");
}

std::vector<PartId> parse_parts(std::string_view list, const std::string& context) {
  std::vector<PartId> out;
  for (auto t : split(list, ',')) {
    const auto p = parse_number<PartId>(t, context);
    if (p == 0) throw InputError(context + ": part count must be at least 1");
    out.push_back(p);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string format_row(const std::string& instance, ModelKind model, PartId p, std::uint64_t seed,
                       const std::optional<CommReport>& report, bool feasible, double ms) {
  std::string row = csv_field(instance) + "," + std::string(model_name(model)) + "," + std::to_string(p) + "," +
                    std::to_string(seed) + ",";
  if (report) {
    row += std::to_string(report->max_cut) + "," + std::to_string(report->connectivity) + "," +
           format_ratio(report->achieved_epsilon) + "," + format_ratio(report->achieved_delta) + ",";
  } else {
    row += ",,,,";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  row += std::string(feasible ? "1" : "0") + "," + buf;
  return row;
}

}  // namespace

std::string format_ratio(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

SweepConfig parse_sweep_config(std::string_view text) {
  SweepConfig cfg;
  bool seeds_given = false;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::string ctx = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError(ctx + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "instance") {
      SweepInstance inst;
      const auto at = value.find('@');
      inst.source = std::string(trim(value.substr(0, at)));
      if (at != std::string_view::npos) inst.p_override = parse_parts(value.substr(at + 1), ctx);
      cfg.instances.push_back(std::move(inst));
    } else if (key == "model") {
      for (auto t : split(value, ',')) cfg.models.push_back(parse_model_kind(t));
    } else if (key == "p") {
      for (PartId p : parse_parts(value, ctx)) cfg.p_list.push_back(p);
    } else if (key == "seed") {
      if (!seeds_given) cfg.seeds.clear(), seeds_given = true;
      for (auto t : split(value, ',')) cfg.seeds.push_back(parse_number<std::uint64_t>(t, ctx));
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(value, ctx);
      if (cfg.epsilon < 0) throw InputError(ctx + ": epsilon must be nonnegative");
    } else if (key == "objective") {
      cfg.objective = parse_objective(value);
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "data_vertices") {
      cfg.data_vertices = parse_number<int>(value, ctx) != 0;
    } else if (key == "threads") {
      cfg.threads = std::max(1u, parse_number<unsigned>(value, ctx));
    } else {
      throw InputError(ctx + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (cfg.instances.empty()) throw InputError("sweep config lists no instance");
  if (cfg.models.empty()) throw InputError("sweep config lists no model");
  for (const auto& inst : cfg.instances) {
    if (inst.p_override.empty() && cfg.p_list.empty()) {
      throw InputError("no part counts for instance '" + inst.source + "'");
    }
  }
  return cfg;
}

InstancePair load_instance(const std::string& source) {
  const auto colon = source.find(':');
  if (colon == std::string::npos) throw InputError("instance '" + source + "' has no kind prefix");
  const std::string kind = source.substr(0, colon);
  const std::string rest = source.substr(colon + 1);
  const std::string ctx = "instance '" + source + "'";
  NonzeroStructure a, b;
  if (kind == "mtx") {
    const auto files = split(rest, ',');
    if (files.size() > 2) throw InputError(ctx + ": expected one or two files");
    a = load_matrix_market_file(std::string(files[0]));
    b = files.size() == 2 ? load_matrix_market_file(std::string(files[1])) : a;
  } else if (kind == "mtx-aat") {
    a = load_matrix_market_file(rest);
    b = transpose(a);
  } else if (kind == "amg-ap") {
    const auto n = parse_number<Index>(rest, ctx);
    a = gen_stencil27(n);
    b = gen_sa_prolongator(n);
  } else if (kind == "amg-ptap") {
    const auto n = parse_number<Index>(rest, ctx);
    const auto p = gen_sa_prolongator(n);
    a = transpose(p);
    b = symbolic_multiply(gen_stencil27(n), p).c;
  } else if (kind == "er") {
    const auto parts = split(rest, ':');
    if (parts.size() != 3) throw InputError(ctx + ": expected er:n:d:seed");
    a = gen_erdos_renyi(parse_number<Index>(parts[0], ctx), parse_double(parts[1], ctx),
                        parse_number<std::uint64_t>(parts[2], ctx));
    b = a;
  } else {
    throw InputError(ctx + ": unknown kind '" + kind + "'");
  }
  StrippedPair s = strip_empty(a, b);
  return {std::move(s.a), std::move(s.b)};
}

void run_sweep(const SweepConfig& cfg, std::ostream& out) {
  struct Point {
    std::size_t graph;
    std::string instance;
    ModelKind model;
    PartId p;
    std::uint64_t seed;
  };
  std::vector<std::shared_ptr<const Hypergraph>> graphs;
  std::vector<Point> grid;
  for (const auto& inst : cfg.instances) {
    // An instance or model that cannot be built yields feasible=0 rows.
    std::optional<InstancePair> pair;
    try {
      pair = load_instance(inst.source);
    } catch (const InputError&) {
    }
    for (ModelKind model : cfg.models) {
      std::shared_ptr<const Hypergraph> h;
      if (pair) {
        try {
          ModelSpec spec{model, cfg.data_vertices, std::nullopt};
          h = std::make_shared<const Hypergraph>(build_model(pair->a, pair->b, spec));
        } catch (const InputError&) {
        }
      }
      graphs.push_back(h);
      const auto& ps = inst.p_override.empty() ? cfg.p_list : inst.p_override;
      for (PartId p : ps) {
        for (std::uint64_t seed : cfg.seeds) grid.push_back({graphs.size() - 1, inst.source, model, p, seed});
      }
    }
  }

  std::vector<std::string> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < grid.size(); t = next++) {
      const Point& pt = grid[t];
      const auto start = std::chrono::steady_clock::now();
      std::optional<CommReport> report;
      bool feasible = false;
      if (const auto& h = graphs[pt.graph]) {
        try {
          PartitionConfig pc;
          pc.p = pt.p;
          pc.epsilon = cfg.epsilon;
          pc.objective = cfg.objective;
          pc.seed = pt.seed;
          const PartitionResult r = partition_multilevel(*h, pc);
          report = comm_report(*h, r.partition);
          feasible = r.balanced;
        } catch (const InputError&) {
        }
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      rows[t] = format_row(pt.instance, pt.model, pt.p, pt.seed, report, feasible, ms);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < cfg.threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << r << '\n';
}

}  // namespace spgemm_hg::cli
