#include "sycos/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sycos/datagen.hpp"
#include "sycos/io.hpp"
#include "sycos/parallel_runner.hpp"
#include "sycos/selector.hpp"
#include "sycos/sycos_bu.hpp"
#include "sycos/sycos_td.hpp"

namespace sycos {

namespace {

using ojson = nlohmann::ordered_json;

struct InputArgs {
  std::string input;
  std::string x_file;
  std::string y_file;
  std::string x_column = "x";
  std::string y_column = "y";
  std::string time_column;
  std::int64_t aggregate = 0;
  bool no_detie = false;
};

struct ParamArgs {
  SearchParams params;
  Index delta = 0;
  std::uint64_t seed = 0;
  bool no_pruning = false;
  bool no_incremental = false;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("--input", in.input, "CSV holding both series");
  cmd->add_option("--x-file", in.x_file, "CSV holding the x series");
  cmd->add_option("--y-file", in.y_file, "CSV holding the y series");
  cmd->add_option("--x-column", in.x_column, "column name of x")->capture_default_str();
  cmd->add_option("--y-column", in.y_column, "column name of y")->capture_default_str();
  cmd->add_option("--time-column", in.time_column, "integer timestamp column");
  cmd->add_option("--aggregate", in.aggregate, "bucket width for mean aggregation");
  cmd->add_flag("--no-detie", in.no_detie, "skip tie-breaking jitter");
}

void add_params(CLI::App* cmd, ParamArgs& a) {
  SearchParams& p = a.params;
  cmd->add_option("--sigma", p.sigma, "correlation threshold on normalized MI")->capture_default_str();
  cmd->add_option("--tau-ratio", p.tau_ratio, "noise threshold as a fraction of sigma")->capture_default_str();
  cmd->add_option("--delta", a.delta, "window step (default: per method)");
  cmd->add_option("--smin", p.s_min, "minimum window size")->capture_default_str();
  cmd->add_option("--smax", p.s_max, "maximum window size (default: series length)");
  cmd->add_option("--k", p.k, "nearest neighbours")->capture_default_str();
  cmd->add_option("--max-idle", p.max_idle, "tolerated non-improving iterations")->capture_default_str();
  cmd->add_option("--history", p.history, "late-acceptance history length")->capture_default_str();
  cmd->add_option("--p", p.p, "noise detections before pruning")->capture_default_str();
  cmd->add_option("--alpha", p.alpha, "runtime weight in selection")->capture_default_str();
  cmd->add_option("--rho", p.rho, "small-window cut as a fraction of smax")->capture_default_str();
  cmd->add_option("--m", p.m, "sampled partitions")->capture_default_str();
  cmd->add_option("--big-m", p.big_m, "total partitions")->capture_default_str();
  cmd->add_option("--seed", a.seed, "random seed (falls back to SYCOS_SEED)");
  cmd->add_flag("--no-noise-pruning", a.no_pruning, "disable noise pruning");
  cmd->add_flag("--no-incremental", a.no_incremental, "recompute MI from scratch");
}

std::uint64_t resolve_seed(const CLI::App* cmd, std::uint64_t given) {
  if (cmd->count("--seed")) return given;
  if (const char* env = std::getenv("SYCOS_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("SYCOS_SEED is not an unsigned integer: ") + env);
  }
  return 42;
}

SearchParams finish_params(const CLI::App* cmd, ParamArgs& a) {
  SearchParams p = a.params;
  p.seed = resolve_seed(cmd, a.seed);
  if (a.delta > 0) p.delta_td = p.delta_bu = a.delta;
  return p;
}

SearchOptions options_of(const ParamArgs& a) {
  SearchOptions o;
  o.noise_pruning = !a.no_pruning;
  o.incremental = !a.no_incremental;
  return o;
}

TimeSeriesPair load(const InputArgs& in, std::uint64_t seed) {
  IngestSpec spec;
  if (!in.input.empty()) {
    spec.x_path = in.input;
  } else if (!in.x_file.empty() && !in.y_file.empty()) {
    spec.x_path = in.x_file;
    spec.y_path = in.y_file;
  } else {
    throw ConfigError("give --input, or both --x-file and --y-file");
  }
  spec.x_column = in.x_column;
  spec.y_column = in.y_column;
  if (!in.time_column.empty()) spec.timestamp_column = in.time_column;
  if (in.aggregate > 0) spec.aggregate = in.aggregate;
  spec.detie = !in.no_detie;
  spec.seed = seed;
  return ingest(spec);
}

ojson params_json(const SearchParams& p, const SearchOptions& o) {
  ojson j;
  j["sigma"] = p.sigma;
  j["tau_ratio"] = p.tau_ratio;
  j["delta_td"] = p.delta_td;
  j["delta_bu"] = p.delta_bu;
  j["s_min"] = p.s_min;
  j["s_max"] = p.s_max;
  j["k"] = p.k;
  j["max_idle"] = p.max_idle;
  j["history"] = p.history;
  j["p"] = p.p;
  j["alpha"] = p.alpha;
  j["rho"] = p.rho;
  j["m"] = p.m;
  j["big_m"] = p.big_m;
  j["seed"] = p.seed;
  j["noise_pruning"] = o.noise_pruning;
  j["incremental"] = o.incremental;
  return j;
}

ojson stats_json(const SearchStats& s) {
  ojson j;
  j["mi_evaluations"] = s.mi_evaluations;
  j["cache_hits"] = s.cache_hits;
  j["knn_searches"] = s.knn_searches;
  j["windows_visited"] = s.windows_visited;
  j["noise_checks"] = s.noise_checks;
  j["noise_verdicts"] = s.noise_verdicts;
  j["prune_events"] = s.prune_events;
  j["runtime_seconds"] = s.runtime_seconds;
  return j;
}

ojson selection_json(const SelectionReport& r) {
  ojson j;
  j["chosen"] = to_string(r.chosen);
  j["nscore_td"] = r.nscore_td;
  j["nscore_bu"] = r.nscore_bu;
  j["runtime_share_td"] = r.runtime_share_td;
  j["count_share_td"] = r.count_share_td;
  j["degenerate_counts"] = r.degenerate_counts;
  j["alpha"] = r.alpha;
  j["rho"] = r.rho;
  j["avg_runtime_td"] = r.stats.avg_runtime_td;
  j["avg_runtime_bu"] = r.stats.avg_runtime_bu;
  j["n_large_td"] = r.stats.n_large_td;
  j["n_small_td"] = r.stats.n_small_td;
  j["n_small_bu"] = r.stats.n_small_bu;
  j["n_large_bu"] = r.stats.n_large_bu;
  j["partitions"] = ojson::array();
  for (const auto& t : r.partitions) {
    ojson pj;
    pj["start_index"] = t.partition.start;
    pj["end_index"] = t.partition.end - 1;
    pj["s_max"] = t.s_max;
    pj["runtime_td"] = t.runtime_td;
    pj["runtime_bu"] = t.runtime_bu;
    pj["n_small_td"] = t.n_small_td;
    pj["n_large_td"] = t.n_large_td;
    pj["n_small_bu"] = t.n_small_bu;
    pj["n_large_bu"] = t.n_large_bu;
    j["partitions"].push_back(pj);
  }
  return j;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw IngestError("cannot write " + path);
  f << text;
  if (!f) throw IngestError("failed writing " + path);
}

MethodChoice parse_method(const std::string& m) {
  if (m == "td") return MethodChoice::TD;
  if (m == "bu") return MethodChoice::BU;
  return MethodChoice::Auto;
}

ScenarioSpec scenario_by_name(const std::string& name, std::uint64_t seed) {
  if (name == "dense") return dense_scenario(seed);
  if (name == "sparse") return sparse_scenario(seed);
  if (name == "moderate") return moderate_scenario(seed);
  if (name == "block") return embedded_block(seed);
  throw ConfigError("unknown scenario '" + name + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-scale correlated window search between two time series", "sycos"};
  app.require_subcommand(1);

  InputArgs search_in;
  ParamArgs search_p;
  std::string method = "auto", out_path, format = "json";
  int chunks = 1, workers = 1;
  auto* search = app.add_subcommand("search", "find correlated windows");
  add_input(search, search_in);
  add_params(search, search_p);
  search->add_option("--method", method, "td, bu or auto")
      ->check(CLI::IsMember({"td", "bu", "auto"}))
      ->capture_default_str();
  search->add_option("--chunks", chunks, "data chunks")->capture_default_str();
  search->add_option("--workers", workers, "worker threads")->capture_default_str();
  search->add_option("--out", out_path, "output file (default stdout)");
  search->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string relation, scenario, gen_out, truth_out;
  Index gen_n = 1000;
  double gen_noise = -1.0;
  std::uint64_t gen_seed = 0;
  bool unsorted = false;
  auto* generate = app.add_subcommand("generate", "write a synthetic fixture as CSV");
  auto* rel_opt = generate->add_option("--relation", relation, "relation family");
  auto* sc_opt = generate->add_option("--scenario", scenario, "dense, sparse, moderate or block");
  rel_opt->excludes(sc_opt);
  generate->add_option("--n", gen_n, "samples for a relation fixture")->capture_default_str();
  generate->add_option("--noise", gen_noise, "noise amplitude (default: family default)");
  generate->add_option("--seed", gen_seed, "random seed (falls back to SYCOS_SEED)");
  generate->add_flag("--unsorted", unsorted, "keep x in draw order");
  generate->add_option("--out", gen_out, "output CSV")->required();
  generate->add_option("--truth", truth_out, "ground-truth block list (JSON)");

  InputArgs bench_in;
  ParamArgs bench_p;
  std::string bench_out;
  std::uint64_t fixture_seed = 1;
  auto* bench = app.add_subcommand("bench", "compare origin, noise, mi-opt and both variants");
  add_input(bench, bench_in);
  add_params(bench, bench_p);
  bench->add_option("--fixture-seed", fixture_seed, "seed of the built-in block fixture")
      ->capture_default_str();
  bench->add_option("--out", bench_out, "output file (default stdout)");

  InputArgs select_in;
  ParamArgs select_p;
  std::string select_out;
  auto* select = app.add_subcommand("select", "report the TD/BU choice only");
  add_input(select, select_in);
  add_params(select, select_p);
  select->add_option("--out", select_out, "output file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  if (*search) {
    const SearchParams p = finish_params(search, search_p);
    const SearchOptions o = options_of(search_p);
    const TimeSeriesPair pair = load(search_in, p.seed);
    const ParallelResult r = run_parallel(pair, p, parse_method(method), chunks, workers, o);
    ojson meta;
    meta["samples"] = pair.size();
    meta["method"] = method;
    meta["chunks"] = chunks;
    meta["workers"] = workers;
    meta["params"] = params_json(p.resolved(pair.size()), o);
    SearchStats total;
    for (const auto& c : r.chunks) total.absorb(c.stats);
    meta["stats"] = stats_json(total);
    meta["runtime_seconds"] = r.runtime_seconds;
    if (r.selection) meta["selection"] = selection_json(*r.selection);
    const WindowReport report = make_report(r.windows, pair, meta);
    emit(format == "csv" ? to_csv(report) : to_json(report), out_path, out);
    return 0;
  }

  if (*generate) {
    const std::uint64_t seed = resolve_seed(generate, gen_seed);
    ojson truth = ojson::array();
    TimeSeriesPair pair;
    if (!scenario.empty()) {
      const Scenario sc = generate_scenario(scenario_by_name(scenario, seed));
      pair = sc.pair;
      for (const Window& w : sc.truth) truth.push_back({{"start_index", w.start}, {"end_index", w.end - 1}});
    } else if (!relation.empty()) {
      RelationSpec spec;
      spec.kind = parse_relation(relation);
      spec.n = gen_n;
      spec.seed = seed;
      spec.sorted = !unsorted;
      if (gen_noise >= 0.0) spec.noise = gen_noise;
      pair = generate_relation(spec);
      truth.push_back({{"start_index", 0}, {"end_index", pair.size() - 1}});
    } else {
      throw ConfigError("give --relation or --scenario");
    }
    write_pair_csv(gen_out, pair);
    if (!truth_out.empty()) emit(truth.dump(2) + "\n", truth_out, out);
    return 0;
  }

  if (*bench) {
    SearchParams p = finish_params(bench, bench_p);
    TimeSeriesPair pair;
    if (bench_in.input.empty() && bench_in.x_file.empty()) {
      pair = generate_scenario(embedded_block(fixture_seed)).pair;
    } else {
      pair = load(bench_in, p.seed);
    }
    struct Variant {
      const char* name;
      bool pruning;
      bool incremental;
    };
    const Variant variants[] = {
        {"origin", false, false}, {"noise", true, false}, {"mi-opt", false, true}, {"both", true, true}};
    ojson j;
    j["samples"] = pair.size();
    j["params"] = params_json(p.resolved(pair.size()), SearchOptions{});
    for (const char* m : {"td", "bu"}) {
      ojson mj;
      for (const Variant& v : variants) {
        SearchOptions o;
        o.noise_pruning = v.pruning;
        o.incremental = v.incremental;
        const SearchResult r = std::string(m) == "td" ? run_td(pair, p, o) : run_bu(pair, p, o);
        ojson vj = stats_json(r.stats);
        vj["windows"] = r.windows.size();
        vj["covered"] = r.windows.covered();
        mj[v.name] = vj;
      }
      j[m] = mj;
    }
    emit(j.dump(2) + "\n", bench_out, out);
    return 0;
  }

  if (*select) {
    const SearchParams p = finish_params(select, select_p);
    const TimeSeriesPair pair = load(select_in, p.seed);
    const SelectionReport r = select_method(pair, p, options_of(select_p));
    emit(selection_json(r).dump(2) + "\n", select_out, out);
    return 0;
  }
  return 2;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace sycos
