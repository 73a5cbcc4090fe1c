#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qre/grid_io.hpp"
#include "qre/qcb.hpp"
#include "qre/qst.hpp"
#include "qre/rtp.hpp"
#include "qre/tomo_sim.hpp"
#include "qre/verdicts.hpp"

namespace {

using nlohmann::json;
using namespace qre;

constexpr const char* kSchemaVersion = "1";

// Human-facing numbers carry 12 significant digits; grid files use exact().
std::string sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string exact17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  bool log_spaced = false;
  std::string spec;
};

Range parse_range(const std::string& text, const std::string& flag) {
  Range r;
  r.spec = text;
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, ':')) parts.push_back(part);
  try {
    if (parts.size() == 1) {
      r.lo = r.hi = std::stod(parts[0]);
      r.count = 1;
      return r;
    }
    if (parts.size() != 3) {
      throw domain_error(flag + ": expected lo:hi:count[log] or a single value, got '" +
                         text + "'");
    }
    r.lo = std::stod(parts[0]);
    r.hi = std::stod(parts[1]);
    std::string count_part = parts[2];
    if (count_part.size() > 3 && count_part.substr(count_part.size() - 3) == "log") {
      r.log_spaced = true;
      count_part = count_part.substr(0, count_part.size() - 3);
    }
    r.count = std::stoi(count_part);
  } catch (const std::invalid_argument&) {
    throw domain_error(flag + ": cannot parse range '" + text + "'");
  } catch (const std::out_of_range&) {
    throw domain_error(flag + ": value out of range in '" + text + "'");
  }
  if (r.count < 1) {
    throw domain_error(flag + ": count must be >= 1");
  }
  if (r.lo > r.hi) {
    throw domain_error(flag + ": lo must not exceed hi");
  }
  if (r.log_spaced && r.lo <= 0.0) {
    throw domain_error(flag + ": log spacing needs positive endpoints");
  }
  return r;
}

std::vector<double> materialize(const Range& r) {
  std::vector<double> out;
  out.reserve(r.count);
  if (r.count == 1) {
    out.push_back(r.lo);
    return out;
  }
  for (int i = 0; i < r.count; ++i) {
    const double t = static_cast<double>(i) / (r.count - 1);
    if (r.log_spaced) {
      out.push_back(std::exp((1.0 - t) * std::log(r.lo) + t * std::log(r.hi)));
    } else {
      out.push_back(r.lo + t * (r.hi - r.lo));
    }
  }
  out.back() = r.hi;  // guard endpoint roundoff
  return out;
}

std::vector<std::int64_t> materialize_counts(const Range& r, const std::string& flag) {
  std::vector<std::int64_t> out;
  for (double v : materialize(r)) {
    const auto n = static_cast<std::int64_t>(std::llround(v));
    if (n < 1) {
      throw domain_error(flag + ": copy counts must be >= 1");
    }
    if (out.empty() || out.back() != n) {
      out.push_back(n);
    }
  }
  return out;
}

Ensemble parse_ensemble(const std::string& text, const std::string& flag, int d) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw domain_error(flag + ": expected N,F (e.g. 1000,0.75)");
  }
  Ensemble e;
  try {
    e.n = std::stod(text.substr(0, comma));
    e.f = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw domain_error(flag + ": cannot parse '" + text + "'");
  }
  e.d = d;
  if (e.n < 1.0) {
    throw domain_error(flag + ": copy count must be >= 1");
  }
  return e;
}

// Drops grid points at or below the open domain edge; they are reported as
// truncation notes rather than failures.
std::vector<double> clip_domain(const std::vector<double>& grid, double open_low,
                                const std::string& flag, int& dropped) {
  std::vector<double> kept;
  for (double g : grid) {
    if (g > open_low && g <= 1.0) {
      kept.push_back(g);
    } else if (g > 1.0) {
      throw domain_error(flag + ": fidelity above 1");
    } else {
      ++dropped;
    }
  }
  if (kept.empty()) {
    throw domain_error(flag + ": no grid points inside the domain (" + sig12(open_low) + ", 1]");
  }
  return kept;
}

json curve_to_json(const EquivalenceCurve& c) {
  json points = json::array();
  for (const CurvePoint& p : c.points) {
    points.push_back({{"g", p.g}, {"m", p.m}});
  }
  json out{{"task", to_string(c.task)},
           {"d", c.d},
           {"singular_g", c.singular_g},
           {"truncated", c.truncated},
           {"separation", c.separation},
           {"clamped", c.clamped},
           {"points", points}};
  if (c.theta) {
    out["theta"] = *c.theta;
  }
  if (!c.gaps.empty()) {
    out["gaps"] = c.gaps;
  }
  return out;
}

void print_curve_block(std::ostream& os, const EquivalenceCurve& c) {
  os << "# task," << to_string(c.task) << "\n";
  os << "# d," << c.d << "\n";
  if (c.theta) {
    os << "# theta," << sig12(*c.theta) << "\n";
  }
  os << "# singular_g," << sig12(c.singular_g) << "\n";
  if (c.truncated > 0) {
    os << "# truncated," << c.truncated << "\n";
  }
  if (c.separation) {
    os << "# separation,1\n";
  }
  if (c.clamped) {
    os << "# clamped,1\n";
  }
  os << "g,m\n";
  for (const CurvePoint& p : c.points) {
    os << sig12(p.g) << ',' << sig12(p.m) << "\n";
  }
}

void print_header(std::ostream& os, const std::string& command_echo) {
  os << "# schema_version," << kSchemaVersion << "\n";
  os << "# command," << command_echo << "\n";
}

struct CurveArgs {
  std::string task;
  std::string ref_text;
  std::string g_text;
  int d = 2;
  double theta = verdicts::kDefaultTheta;
  std::string format = "csv";
};

int run_curve(const CurveArgs& args) {
  const Ensemble ref = parse_ensemble(args.ref_text, "--ref", args.d);
  const Range g_range = parse_range(args.g_text, "--g");
  const std::vector<double> raw_grid = materialize(g_range);

  std::ostringstream echo;
  echo << "curve --task " << args.task << " --ref " << exact17(ref.n) << ',' << exact17(ref.f)
       << " --d " << args.d << " --theta " << exact17(args.theta) << " --g " << g_range.spec
       << " --format " << args.format;

  int dropped = 0;
  std::vector<EquivalenceCurve> curves;
  json payload;
  if (args.task == "all") {
    const std::vector<double> grid = clip_domain(raw_grid, 0.5, "--g", dropped);
    curves = verdicts::all_curves(ref, grid, args.theta, args.d);
    const verdicts::AmbiguityBand band = verdicts::ambiguity_band(curves);
    if (args.format == "json") {
      json jc = json::array();
      for (const EquivalenceCurve& c : curves) jc.push_back(curve_to_json(c));
      json jband{{"g", band.g}, {"m_low", band.m_low}, {"m_high", band.m_high}};
      payload = {{"curves", jc}, {"band", jband}, {"dropped_grid_points", dropped}};
    } else {
      print_header(std::cout, echo.str());
      if (dropped > 0) {
        std::cout << "# dropped_grid_points," << dropped << "\n";
      }
      for (const EquivalenceCurve& c : curves) {
        print_curve_block(std::cout, c);
        std::cout << "\n";
      }
      std::cout << "# task,band\ng,m_low,m_high\n";
      for (std::size_t k = 0; k < band.g.size(); ++k) {
        std::cout << sig12(band.g[k]) << ',' << sig12(band.m_low[k]) << ','
                  << sig12(band.m_high[k]) << "\n";
      }
      return 0;
    }
  } else {
    EquivalenceCurve c;
    if (args.task == "rtp") {
      const std::vector<double> grid =
          clip_domain(raw_grid, 1.0 / args.d, "--g", dropped);
      c = rtp::curve(ref, grid);
    } else if (args.task == "qcb") {
      const std::vector<double> grid = clip_domain(raw_grid, 0.5, "--g", dropped);
      Ensemble qref = ref;
      qref.d = 2;
      c = qcb::curve(qref, args.theta, grid);
    } else if (args.task == "purification") {
      const std::vector<double> grid = clip_domain(raw_grid, 0.5, "--g", dropped);
      Ensemble qref = ref;
      qref.d = 2;
      c = purification::curve(qref, grid);
    } else if (args.task == "qst") {
      const std::vector<double> grid = clip_domain(raw_grid, 0.5, "--g", dropped);
      Ensemble qref = ref;
      qref.d = 2;
      c = qst::curve(qref, grid);
    } else {
      throw domain_error("--task: unknown task '" + args.task + "'");
    }
    if (args.format == "json") {
      payload = {{"curve", curve_to_json(c)}, {"dropped_grid_points", dropped}};
    } else {
      print_header(std::cout, echo.str());
      if (dropped > 0) {
        std::cout << "# dropped_grid_points," << dropped << "\n";
      }
      print_curve_block(std::cout, c);
      return 0;
    }
  }

  json out{{"schema_version", kSchemaVersion},
           {"params",
            {{"task", args.task},
             {"ref_n", ref.n},
             {"ref_f", ref.f},
             {"d", args.d},
             {"theta", args.theta},
             {"g", g_range.spec}}},
           {"payload", payload}};
  std::cout << out.dump() << "\n";
  return 0;
}

struct TradeArgs {
  std::string ref_text;
  std::string offer_text;
  int d = 2;
  double theta = verdicts::kDefaultTheta;
  std::string format = "csv";
};

json region_to_json(const purification::RegionVerdict& v) {
  return json{{"region", purification::to_string(v.region)},
              {"strength", purification::to_string(v.strength)},
              {"favored", purification::to_string(v.favored)},
              {"on_copy_line", v.on_copy_line},
              {"on_fidelity_line", v.on_fidelity_line},
              {"on_separation_curve", v.on_separation_curve},
              {"separation_m", v.separation_m}};
}

int run_trade(const TradeArgs& args) {
  const Ensemble ref = parse_ensemble(args.ref_text, "--ref", args.d);
  const Ensemble offer = parse_ensemble(args.offer_text, "--offer", args.d);
  const verdicts::TradeReport report =
      verdicts::trade_verdict(ref, offer, args.theta, args.d);

  std::ostringstream echo;
  echo << "trade --ref " << exact17(ref.n) << ',' << exact17(ref.f) << " --offer "
       << exact17(offer.n) << ',' << exact17(offer.f) << " --d " << args.d << " --theta "
       << exact17(args.theta) << " --format " << args.format;

  if (args.format == "json") {
    json per_task = json::array();
    for (const auto& [task, cmp] : report.per_task) {
      per_task.push_back({{"task", to_string(task)},
                          {"verdict", verdicts::to_string(cmp.verdict)},
                          {"m_required", cmp.m_required},
                          {"m_offered", cmp.m_offered}});
    }
    json out{{"schema_version", kSchemaVersion},
             {"params",
              {{"ref_n", ref.n},
               {"ref_f", ref.f},
               {"offer_n", offer.n},
               {"offer_f", offer.f},
               {"d", args.d},
               {"theta", args.theta}}},
             {"payload",
              {{"per_task", per_task},
               {"region", region_to_json(report.region)},
               {"overall", verdicts::to_string(report.overall)},
               {"indifferent", report.indifferent}}}};
    std::cout << out.dump() << "\n";
    return 0;
  }

  print_header(std::cout, echo.str());
  std::cout << "# region," << purification::to_string(report.region.region) << "\n";
  std::cout << "# region_strength," << purification::to_string(report.region.strength) << "\n";
  std::cout << "# region_favored," << purification::to_string(report.region.favored) << "\n";
  std::cout << "# overall," << verdicts::to_string(report.overall) << "\n";
  std::cout << "# indifferent," << (report.indifferent ? 1 : 0) << "\n";
  std::cout << "task,verdict,m_required,m_offered\n";
  for (const auto& [task, cmp] : report.per_task) {
    std::cout << to_string(task) << ',' << verdicts::to_string(cmp.verdict) << ','
              << sig12(cmp.m_required) << ',' << sig12(cmp.m_offered) << "\n";
  }
  return 0;
}

struct RegionArgs {
  std::string ref_text;
  std::string query_text;
  std::string format = "csv";
};

int run_region(const RegionArgs& args) {
  const Ensemble ref = parse_ensemble(args.ref_text, "--ref", 2);
  const Ensemble query = parse_ensemble(args.query_text, "--query", 2);
  const purification::RegionVerdict v = purification::classify_region(ref, query);

  std::ostringstream echo;
  echo << "region --ref " << exact17(ref.n) << ',' << exact17(ref.f) << " --query "
       << exact17(query.n) << ',' << exact17(query.f) << " --format " << args.format;

  if (args.format == "json") {
    json out{{"schema_version", kSchemaVersion},
             {"params",
              {{"ref_n", ref.n},
               {"ref_f", ref.f},
               {"query_n", query.n},
               {"query_f", query.f}}},
             {"payload", region_to_json(v)}};
    std::cout << out.dump() << "\n";
    return 0;
  }
  print_header(std::cout, echo.str());
  std::cout << "region,strength,favored,on_copy_line,on_fidelity_line,on_separation_curve,"
               "separation_m\n";
  std::cout << purification::to_string(v.region) << ',' << purification::to_string(v.strength)
            << ',' << purification::to_string(v.favored) << ',' << (v.on_copy_line ? 1 : 0)
            << ',' << (v.on_fidelity_line ? 1 : 0) << ',' << (v.on_separation_curve ? 1 : 0)
            << ',' << sig12(v.separation_m) << "\n";
  return 0;
}

struct SimulateArgs {
  std::string n_text;
  std::string g_text;
  int trials = 1000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
  std::string format = "csv";
};

int run_simulate(const SimulateArgs& args) {
  tomo::SimConfig config;
  config.n_grid = materialize_counts(parse_range(args.n_text, "--n"), "--n");
  config.g_grid = materialize(parse_range(args.g_text, "--g"));
  config.trials = args.trials;
  config.master_seed = args.seed;
  config.threads = args.threads;

  std::string out_path = args.out_path;
  if (out_path.empty()) {
    const char* dir = std::getenv("QRE_OUT_DIR");
    out_path = dir ? (std::filesystem::path(dir) / "simgrid.csv").string() : "simgrid.csv";
  }

  std::ostringstream echo;
  echo << "simulate --n " << args.n_text << " --g " << args.g_text << " --trials "
       << args.trials << " --seed " << args.seed << " --threads " << args.threads << " --out "
       << out_path;

  const auto start = std::chrono::steady_clock::now();
  const tomo::SimGrid grid = tomo::simulate_grid(config);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  {
    std::ofstream file(out_path);
    if (!file) {
      throw io_error("cannot open output file: " + out_path);
    }
    tomo::write_grid(file, grid, echo.str());
    if (!file.good()) {
      throw io_error("failed writing output file: " + out_path);
    }
  }

  if (args.format == "json") {
    json out{{"schema_version", kSchemaVersion},
             {"params",
              {{"n", args.n_text},
               {"g", args.g_text},
               {"trials", args.trials},
               {"seed", args.seed},
               {"threads", args.threads},
               {"out", out_path}}},
             {"payload",
              {{"rows", grid.n_grid.size()},
               {"cols", grid.g_grid.size()},
               {"elapsed_s", elapsed},
               {"out", out_path}}}};
    std::cout << out.dump() << "\n";
    return 0;
  }
  print_header(std::cout, echo.str());
  std::cout << "key,value\n";
  std::cout << "rows," << grid.n_grid.size() << "\n";
  std::cout << "cols," << grid.g_grid.size() << "\n";
  std::cout << "trials," << grid.trials << "\n";
  std::cout << "seed," << grid.master_seed << "\n";
  std::cout << "elapsed_s," << sig12(elapsed) << "\n";
  std::cout << "out," << out_path << "\n";
  return 0;
}

struct ContourArgs {
  std::string grid_path;
  std::string ref_text;
  std::string metric = "infidelity";
  std::string format = "csv";
};

int run_contour(const ContourArgs& args) {
  const Ensemble ref = parse_ensemble(args.ref_text, "--ref", 2);
  tomo::ContourMetric metric;
  if (args.metric == "infidelity") {
    metric = tomo::ContourMetric::infidelity;
  } else if (args.metric == "bures_sq") {
    metric = tomo::ContourMetric::bures_sq;
  } else {
    throw domain_error("--metric: expected infidelity or bures_sq");
  }

  const tomo::SimGrid grid = tomo::read_grid_file(args.grid_path);
  const EquivalenceCurve curve = tomo::extract_contour(grid, ref, metric);

  std::ostringstream echo;
  echo << "contour --grid " << args.grid_path << " --ref " << exact17(ref.n) << ','
       << exact17(ref.f) << " --metric " << args.metric << " --format " << args.format;

  if (args.format == "json") {
    json out{{"schema_version", kSchemaVersion},
             {"params",
              {{"grid", args.grid_path},
               {"ref_n", ref.n},
               {"ref_f", ref.f},
               {"metric", args.metric},
               {"seed", grid.master_seed}}},
             {"payload", curve_to_json(curve)}};
    std::cout << out.dump() << "\n";
    return 0;
  }

  print_header(std::cout, echo.str());
  std::cout << "# task,simulated\n";
  std::cout << "# metric," << args.metric << "\n";
  std::cout << "# seed," << grid.master_seed << "\n";
  std::cout << "g,m\n";
  // Gap columns appear in place with m = nan.
  std::size_t p = 0, q = 0;
  while (p < curve.points.size() || q < curve.gaps.size()) {
    if (q >= curve.gaps.size() ||
        (p < curve.points.size() && curve.points[p].g <= curve.gaps[q])) {
      std::cout << sig12(curve.points[p].g) << ',' << sig12(curve.points[p].m) << "\n";
      ++p;
    } else {
      std::cout << sig12(curve.gaps[q]) << ",nan\n";
      ++q;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational resource equivalence of depolarized qubit ensembles"};
  app.require_subcommand(1);

  CurveArgs curve_args;
  CLI::App* curve = app.add_subcommand(
      "curve", "Sample a resource equivalence curve (or all of them plus the ambiguity band)");
  curve->add_option("--task", curve_args.task, "rtp | qcb | purification | qst | all")
      ->required();
  curve->add_option("--ref", curve_args.ref_text, "Reference ensemble N,F")->required();
  curve->add_option("--g", curve_args.g_text, "Fidelity grid lo:hi:count[log]")->required();
  curve->add_option("--d", curve_args.d, "Hilbert space dimension (rtp)");
  curve->add_option("--theta", curve_args.theta, "Bloch separation angle (qcb)");
  curve->add_option("--format", curve_args.format, "csv | json");

  TradeArgs trade_args;
  CLI::App* trade = app.add_subcommand("trade", "Compare an offered ensemble on every task");
  trade->add_option("--ref", trade_args.ref_text, "Reference ensemble N,F")->required();
  trade->add_option("--offer", trade_args.offer_text, "Offered ensemble M,G")->required();
  trade->add_option("--d", trade_args.d, "Hilbert space dimension (rtp)");
  trade->add_option("--theta", trade_args.theta, "Bloch separation angle (qcb)");
  trade->add_option("--format", trade_args.format, "csv | json");

  RegionArgs region_args;
  CLI::App* region = app.add_subcommand("region", "Purification comparison region of a query");
  region->add_option("--ref", region_args.ref_text, "Reference ensemble N,F")->required();
  region->add_option("--query", region_args.query_text, "Query ensemble M,G")->required();
  region->add_option("--format", region_args.format, "csv | json");

  SimulateArgs sim_args;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the seeded tomography error grid and write it out");
  simulate->add_option("--n", sim_args.n_text, "Copy count grid lo:hi:count[log]")->required();
  simulate->add_option("--g", sim_args.g_text, "Fidelity grid lo:hi:count[log]")->required();
  simulate->add_option("--trials", sim_args.trials, "Haar states per grid point");
  simulate->add_option("--seed", sim_args.seed, "Master seed");
  simulate->add_option("--threads", sim_args.threads, "Worker cap (0 = hardware)");
  simulate->add_option("--out", sim_args.out_path,
                       "Grid file path (default $QRE_OUT_DIR/simgrid.csv)");
  simulate->add_option("--format", sim_args.format, "Summary format: csv | json");

  ContourArgs contour_args;
  CLI::App* contour =
      app.add_subcommand("contour", "Extract the equal-error contour from a grid file");
  contour->add_option("--grid", contour_args.grid_path, "Grid file from simulate")->required();
  contour->add_option("--ref", contour_args.ref_text, "Reference ensemble N,F")->required();
  contour->add_option("--metric", contour_args.metric, "infidelity | bures_sq");
  contour->add_option("--format", contour_args.format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    for (const auto& [sub, fmt] :
         {std::pair{curve, &curve_args.format}, {trade, &trade_args.format},
          {region, &region_args.format}, {simulate, &sim_args.format},
          {contour, &contour_args.format}}) {
      if (sub->parsed() && *fmt != "csv" && *fmt != "json") {
        throw domain_error("--format: expected csv or json");
      }
    }
    if (curve->parsed()) return run_curve(curve_args);
    if (trade->parsed()) return run_trade(trade_args);
    if (region->parsed()) return run_region(region_args);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (contour->parsed()) return run_contour(contour_args);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
