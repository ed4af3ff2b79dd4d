// qubolin command line: generate and parse instances, build and export the
// linearization catalog, solve LP relaxations and MILPs, verify models
// against the brute-force oracle, and run comparison grids.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qubolin/qubolin.hpp"

namespace {

using namespace qubolin;

void write_out(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

ModelId model_arg(const std::string& name, bool allow_invalid) {
  const auto id = parse_model_name(name);
  if (!id) {
    std::ostringstream os;
    os << "unknown model '" << name << "'; catalog:";
    for (ModelId m : catalog()) os << " " << model_name(m);
    throw CLI::ValidationError("--model", os.str());
  }
  if (model_info(*id).known_invalid && !allow_invalid)
    throw CLI::ValidationError(
        "--model", model_name(*id) + " is a known-invalid formulation; pass --allow-invalid");
  return *id;
}

WeightSet weights_arg(const std::string& spec, ModelId id, const QuboInstance& inst) {
  if (spec == "unit") return WeightSet{};
  if (spec == "dual-exact") return weights_for(id, inst, WeightMode::kDualExact);
  if (spec == "dual-safe") return weights_for(id, inst, WeightMode::kDualMilpSafe);
  // Otherwise a file of "kind i j value" lines (kind in alpha/beta/gamma/delta/theta).
  WeightSet w;
  w.mode = WeightMode::kCustom;
  std::istringstream is(read_file(spec));
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ts(line);
    std::string kind;
    int i = 0, j = 0;
    double v = 0.0;
    if (!(ts >> kind >> i >> j >> v)) throw ParseError("expected 'kind i j value'", lineno);
    if (kind == "alpha") w.alpha[{i, j}] = v;
    else if (kind == "beta") w.beta[{i, j}] = v;
    else if (kind == "gamma") w.gamma[{i, j}] = v;
    else if (kind == "delta") w.delta[{i, j}] = v;
    else if (kind == "theta") w.theta[{i, j}] = v;
    else throw ParseError("unknown weight kind '" + kind + "'", lineno);
  }
  return w;
}

WeightMode weight_mode_arg(const std::string& spec) {
  if (spec == "unit") return WeightMode::kUnit;
  if (spec == "dual-exact") return WeightMode::kDualExact;
  if (spec == "dual-safe") return WeightMode::kDualMilpSafe;
  return WeightMode::kCustom;
}

std::string lp_result_text(const LpResult& r, const MilpModel& m, bool verbose) {
  std::ostringstream os;
  os << "status=" << lp_status_name(r.status);
  if (r.status == LpStatus::kOptimal) {
    os << " objective=" << format_double(r.objective) << " iterations=" << r.iterations
       << " basis=" << std::hex << r.basis_fingerprint << std::dec;
  }
  os << "\n";
  if (verbose && r.status == LpStatus::kOptimal) {
    for (std::size_t j = 0; j < m.vars.size(); ++j)
      os << "primal " << m.vars[j].name << " = " << format_double(r.primal[j]) << "\n";
    for (std::size_t k = 0; k < m.rows.size(); ++k)
      os << "dual " << m.rows[k].name << " = " << format_double(r.duals[k]) << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit MILP linearizations of QUBO: build, solve, verify, compare"};
  app.require_subcommand(1);

  std::string instance_arg, model_name_arg, weights_spec = "unit", out_path, format = "lp";
  bool allow_invalid = false;
  double time_limit = 0.0;  // 0 means none

  // generate
  auto* gen = app.add_subcommand("generate", "generate a random instance (canonical text)");
  int gen_n = 10;
  std::uint64_t gen_seed = 1;
  double gen_density = 1.0;
  bool gen_balanced = false;
  std::string gen_rule = "all-half";
  int gen_attempts = 10000;
  std::vector<long long> gen_crange = {-10, 10}, gen_qrange = {-20, 20};
  gen->add_option("--n", gen_n, "dimension");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--density", gen_density, "structural density in (0,1]");
  gen->add_flag("--balanced", gen_balanced, "accept only instances whose GW relaxation is balanced");
  gen->add_option("--balance-rule", gen_rule, "all-half | half-set")
      ->check(CLI::IsMember({"all-half", "half-set"}));
  gen->add_option("--max-attempts", gen_attempts, "draw budget for --balanced");
  gen->add_option("--c-range", gen_crange, "linear coefficient range (two integers)")->expected(2);
  gen->add_option("--q-range", gen_qrange, "quadratic coefficient range (two integers)")->expected(2);
  gen->add_option("--out", out_path, "output file (default stdout)");

  // parse
  auto* parse = app.add_subcommand("parse", "parse OR-Library bqp or canonical text; re-emit canonical");
  std::string parse_orlib_path;
  int parse_index = 1;
  parse->add_option("--orlib", parse_orlib_path, "OR-Library bqp file");
  parse->add_option("--index", parse_index, "1-based instance index within the bqp file");
  parse->add_option("--instance", instance_arg, "canonical instance file or fixture name");
  parse->add_option("--out", out_path, "output file (default stdout)");

  // build / export
  auto* bld = app.add_subcommand("build", "build a formulation and print its shape");
  auto* exp = app.add_subcommand("export", "build a formulation and write LP or MPS text");
  bool strip_y_upper = false;
  for (auto* cmd : {bld, exp}) {
    cmd->add_option("--instance", instance_arg, "fixture name or canonical instance file")->required();
    cmd->add_option("--model", model_name_arg, "formulation name, e.g. GW or ORPK(*,b)")->required();
    cmd->add_option("--weights", weights_spec, "unit | dual-exact | dual-safe | FILE");
    cmd->add_flag("--allow-invalid", allow_invalid, "permit known-invalid formulations");
    cmd->add_flag("--strip-y-upper", strip_y_upper, "drop the y<=1 bounds of PK(a)");
    cmd->add_option("--out", out_path, "output file (default stdout)");
  }
  exp->add_option("--format", format, "lp | mps")->check(CLI::IsMember({"lp", "mps"}));

  // solve-lp
  auto* slp = app.add_subcommand("solve-lp", "solve the LP relaxation");
  bool lp_verbose = false;
  slp->add_option("--instance", instance_arg)->required();
  slp->add_option("--model", model_name_arg)->required();
  slp->add_option("--weights", weights_spec, "unit | dual-exact | dual-safe | FILE");
  slp->add_flag("--allow-invalid", allow_invalid);
  slp->add_flag("--verbose", lp_verbose, "print primal and dual values");
  slp->add_option("--out", out_path);

  // solve-milp
  auto* smilp = app.add_subcommand("solve-milp", "solve to proven optimality by branch and bound");
  long node_cap = 0;
  bool stop_first = false, progress = false;
  smilp->add_option("--instance", instance_arg)->required();
  smilp->add_option("--model", model_name_arg)->required();
  smilp->add_option("--weights", weights_spec, "unit | dual-exact | dual-safe | FILE");
  smilp->add_flag("--allow-invalid", allow_invalid);
  smilp->add_flag("--strip-y-upper", strip_y_upper);
  smilp->add_option("--time-limit", time_limit, "seconds");
  smilp->add_option("--node-cap", node_cap, "node budget");
  smilp->add_flag("--stop-after-first-incumbent", stop_first,
                  "emulate premature termination at the first incumbent");
  smilp->add_flag("--progress", progress, "emit key=value incumbent records");
  smilp->add_option("--out", out_path);

  // oracle
  auto* orc = app.add_subcommand("oracle", "brute-force optimum over all binary vectors");
  int oracle_cap = 24;
  orc->add_option("--instance", instance_arg)->required();
  orc->add_option("--cap", oracle_cap, "dimension cap");
  orc->add_option("--out", out_path);

  // verify
  auto* ver = app.add_subcommand("verify", "compare a model's optima against the oracle");
  int ver_random = 0, ver_attempts = 10000;
  bool ver_search = false;
  std::uint64_t ver_seed = 1;
  ver->add_option("--model", model_name_arg)->required();
  ver->add_option("--instance", instance_arg, "fixture or file (omit for --random/--search)");
  ver->add_option("--random", ver_random, "verify on N seeded random instances (n in 4..10)");
  ver->add_flag("--search", ver_search, "randomized counterexample search (random weights too)");
  ver->add_option("--attempts", ver_attempts, "search budget");
  ver->add_option("--seed", ver_seed);
  ver->add_option("--weights", weights_spec, "unit | dual-safe | FILE");
  ver->add_flag("--allow-invalid", allow_invalid);
  ver->add_option("--out", out_path);

  // compare
  auto* cmp = app.add_subcommand("compare", "run a (instance x model x weights) grid, emit CSV/JSONL");
  std::vector<std::string> cmp_instances, cmp_models = {"valid"}, cmp_weights = {"unit"};
  int jobs = default_jobs();
  bool with_timings = false, lp_only = false;
  cmp->add_option("--instance", cmp_instances, "fixtures or files (repeatable)");
  cmp->add_option("--models", cmp_models, "model names, or 'valid' / 'all'");
  cmp->add_option("--weights", cmp_weights, "unit | dual-exact | dual-safe (repeatable)")
      ->check(CLI::IsMember({"unit", "dual-exact", "dual-safe"}));
  cmp->add_flag("--allow-invalid", allow_invalid, "permit known-invalid formulations");
  cmp->add_option("--time-limit", time_limit, "per-cell seconds");
  cmp->add_option("--jobs", jobs, "parallel cells (QUBOLIN_JOBS overrides the default)");
  cmp->add_flag("--timings", with_timings, "fill the wall_ms column (breaks byte determinism)");
  cmp->add_flag("--lp-only", lp_only, "skip the MILP solves");
  cmp->add_flag("--stop-after-first-incumbent", stop_first);
  cmp->add_option("--format", format, "csv | jsonl")->check(CLI::IsMember({"lp", "mps", "csv", "jsonl"}));
  cmp->add_option("--out", out_path);

  // suite
  auto* ste = app.add_subcommand("suite", "run the full acceptance battery");
  bool quick = false;
  ste->add_flag("--quick", quick, "reduced instance set (n <= 6)");
  ste->add_option("--jobs", jobs, "parallel cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      QuboInstance inst;
      if (gen_balanced) {
        GeneratorConfig cfg;
        cfg.n = gen_n;
        cfg.seed = gen_seed;
        cfg.c_min = gen_crange[0];
        cfg.c_max = gen_crange[1];
        cfg.q_min = gen_qrange[0];
        cfg.q_max = gen_qrange[1];
        cfg.rule = gen_rule == "all-half" ? BalanceRule::kAllHalf : BalanceRule::kHalfIntegralSet;
        cfg.max_attempts = gen_attempts;
        BalancedTrace trace;
        inst = generate_balanced(cfg, &trace);
        std::cerr << "accepted after " << trace.attempts << " draw(s)\n";
      } else {
        inst = generate_uniform(gen_n, gen_crange[0], gen_crange[1], gen_qrange[0], gen_qrange[1],
                                gen_density, gen_seed);
      }
      write_out(out_path, save_canonical(inst));
      return 0;
    }
    if (parse->parsed()) {
      QuboInstance inst;
      if (!parse_orlib_path.empty()) {
        const auto all = parse_orlib(read_file(parse_orlib_path));
        if (parse_index < 1 || parse_index > static_cast<int>(all.size()))
          throw BuildError("--index out of range; file holds " + std::to_string(all.size()));
        inst = all[parse_index - 1];
      } else if (!instance_arg.empty()) {
        inst = load_instance_arg(instance_arg);
      } else {
        throw CLI::ValidationError("parse", "need --orlib or --instance");
      }
      write_out(out_path, save_canonical(inst));
      return 0;
    }

    if (bld->parsed() || exp->parsed() || slp->parsed() || smilp->parsed()) {
      const QuboInstance inst = load_instance_arg(instance_arg);
      const ModelId id = model_arg(model_name_arg, allow_invalid);
      const WeightSet w = weights_arg(weights_spec, id, inst);
      BuildOptions bopts;
      bopts.allow_invalid = allow_invalid;
      bopts.strip_y_upper = strip_y_upper;
      bopts.lp_study = slp->parsed() && w.mode == WeightMode::kDualExact;
      const MilpModel m = build(id, inst, w, bopts);
      if (bld->parsed()) {
        std::ostringstream os;
        int nbin = 0;
        for (const auto& v : m.vars) nbin += v.kind == VarKind::kBinary;
        os << "model=" << m.name << " instance=" << inst.id << " fingerprint=" << m.fingerprint
           << " variables=" << m.vars.size() << " binaries=" << nbin
           << " general_constraints=" << count_general_constraints(m)
           << " expected=" << expected_constraint_count(id, index_sets(inst)) << "\n";
        write_out(out_path, os.str());
        return 0;
      }
      if (exp->parsed()) {
        write_out(out_path, format == "mps" ? export_mps(m) : export_lp(m));
        return 0;
      }
      if (slp->parsed()) {
        const LpResult r = solve_lp(m);
        write_out(out_path, lp_result_text(r, m, lp_verbose));
        return r.status == LpStatus::kOptimal ? 0 : 1;
      }
      MilpOptions mopts;
      if (time_limit > 0) mopts.time_limit_s = time_limit;
      if (node_cap > 0) mopts.node_cap = node_cap;
      mopts.stop_after_first_incumbent = stop_first;
      if (progress) mopts.progress = [](const std::string& line) { std::cerr << line << "\n"; };
      const MilpResult r = solve_milp(m, inst, mopts);
      std::ostringstream os;
      os << "status=" << milp_status_name(r.status);
      if (r.has_incumbent)
        os << " objective=" << format_double(r.model_objective)
           << " recomputed_qubo=" << r.recomputed_qubo;
      os << " best_bound=" << format_double(r.best_bound) << " root_lp=" << format_double(r.root_lp)
         << " nodes=" << r.nodes << "\n";
      write_out(out_path, os.str());
      return 0;
    }

    if (orc->parsed()) {
      const QuboInstance inst = load_instance_arg(instance_arg);
      const BruteForceResult r = brute_force_opt(inst, oracle_cap);
      std::ostringstream os;
      os << "optimum=" << r.value << " maximizers=" << r.argmax.size()
         << (r.argmax_truncated ? "+" : "") << "\n";
      for (const auto& x : r.argmax) {
        os << "x =";
        for (int v : x) os << " " << v;
        os << "\n";
      }
      write_out(out_path, os.str());
      return 0;
    }

    if (ver->parsed()) {
      const ModelId id = model_arg(model_name_arg, allow_invalid);
      VerificationReport rep;
      if (ver_search) {
        rep = search_counterexample(id, ver_seed, ver_attempts);
      } else {
        std::vector<QuboInstance> suite;
        if (!instance_arg.empty()) suite.push_back(load_instance_arg(instance_arg));
        for (int k = 0; k < ver_random; ++k) {
          QuboInstance inst = generate_uniform(4 + k % 7, -20, 20, -20, 20, 1.0, ver_seed + k);
          inst.id = "rand-" + std::to_string(k);
          suite.push_back(std::move(inst));
        }
        if (suite.empty()) throw CLI::ValidationError("verify", "need --instance, --random or --search");
        WeightSet w;
        if (weights_spec != "unit" && !suite.empty()) w = weights_arg(weights_spec, id, suite[0]);
        rep = verify_model(id, suite, w);
      }
      std::ostringstream os;
      os << "model=" << model_name(id) << " verdict=" << verdict_name(rep.verdict)
         << " instances_tested=" << rep.instances_tested << "\n";
      if (rep.verdict == Verdict::kInvalidWitness) {
        os << "witness: model_objective=" << rep.witness_model_objective
           << (rep.witness_is_solution_mismatch ? " recomputed=" : " true_optimum=")
           << rep.witness_true_optimum << "\n";
        if (rep.witness_instance) os << save_canonical(*rep.witness_instance);
      }
      os << rep.detail << "\n";
      write_out(out_path, os.str());
      return rep.verdict == Verdict::kInvalidWitness ? 1 : 0;
    }

    if (cmp->parsed()) {
      std::vector<QuboInstance> instances;
      if (cmp_instances.empty()) cmp_instances = fixtures::names();
      for (const auto& a : cmp_instances) {
        if (a == "ex7") continue;  // asymmetric study instance; base models only
        instances.push_back(load_instance_arg(a));
      }
      std::vector<ModelId> models;
      if (cmp_models.size() == 1 && cmp_models[0] == "valid") {
        models = catalog_valid();
      } else if (cmp_models.size() == 1 && cmp_models[0] == "all") {
        if (!allow_invalid)
          throw CLI::ValidationError("--models", "'all' includes known-invalid formulations; pass --allow-invalid");
        models = catalog();
      } else {
        for (const auto& name : cmp_models) models.push_back(model_arg(name, allow_invalid));
      }
      std::vector<WeightMode> modes;
      for (const auto& spec : cmp_weights) modes.push_back(weight_mode_arg(spec));
      GridOptions gopts;
      if (time_limit > 0) gopts.time_limit_s = time_limit;
      gopts.jobs = jobs;
      gopts.with_timings = with_timings;
      gopts.lp_only = lp_only;
      gopts.stop_after_first_incumbent = stop_first;
      const auto rows = run_grid(instances, models, modes, gopts);
      write_out(out_path, format == "jsonl" ? emit_jsonl(rows) : emit_csv(rows));
      for (const auto& r : rows)
        if (!r.error.empty()) return 1;
      return 0;
    }

    if (ste->parsed()) {
      acceptance::SuiteOptions sopts;
      sopts.quick = quick;
      sopts.jobs = jobs;
      const int failures = acceptance::run_and_print(std::cout, sopts);
      return failures == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
