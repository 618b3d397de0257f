#include "cli.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "packsurgeon/flow.hpp"
#include "packsurgeon/generators.hpp"
#include "packsurgeon/greedy.hpp"
#include "packsurgeon/io.hpp"
#include "packsurgeon/merge.hpp"
#include "packsurgeon/pathwaste.hpp"
#include "packsurgeon/surgery.hpp"
#include "packsurgeon/svg.hpp"

namespace packsurgeon::cli {
namespace {

using io::InputError;
using io::json;

/// A check failed on otherwise valid input; maps to exit code 2.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
T config_value(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config.") + key + ": wrong type");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  ExperimentConfig cfg;
  const auto kind = config_value<std::string>(j, "kind", "");
  if (kind == "ratio") {
    cfg.kind = ExperimentConfig::Kind::kRatio;
  } else if (kind == "blowup") {
    cfg.kind = ExperimentConfig::Kind::kBlowup;
  } else if (kind == "counterexample") {
    cfg.kind = ExperimentConfig::Kind::kCounterexample;
  } else {
    throw InputError("config.kind: expected ratio, blowup or counterexample");
  }
  if (!j.contains("seed")) throw InputError("config: missing field 'seed'");
  if (!j.contains("trials")) throw InputError("config: missing field 'trials'");
  cfg.seed = config_value<std::uint64_t>(j, "seed", 0);
  cfg.trials = config_value<int>(j, "trials", 0);
  if (cfg.trials < 1) throw InputError("config.trials: must be >= 1");
  cfg.n = config_value(j, "n", cfg.n);
  cfg.m = config_value(j, "m", cfg.m);
  cfg.p = config_value(j, "p", cfg.p);
  cfg.x_min = config_value(j, "x_min", cfg.x_min);
  cfg.x_max = config_value(j, "x_max", cfg.x_max);
  cfg.q = config_value(j, "q", cfg.q);
  cfg.delta = config_value(j, "delta", cfg.delta);
  cfg.tau = config_value(j, "tau", cfg.tau);
  cfg.c = config_value(j, "c", cfg.c);
  cfg.output = config_value<std::string>(j, "output", "");
  if (cfg.n < 1 || cfg.m < 1) throw InputError("config: n and m must be positive");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InputError("config.p: must lie in [0, 1]");
  return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid path covers, greedy comparisons, path-waste witnesses and packing surgery",
               "packsurgeon"};
  app.require_subcommand(1);

  std::string in_path, out_path, svg_path, algorithm = "dinic";
  auto* flow_cmd = app.add_subcommand("flow-paths", "Disjoint paths, min cut and rectangle cover");
  flow_cmd->add_option("--in", in_path, "GridInstance JSON")->required();
  flow_cmd->add_option("--out", out_path, "PathCover JSON")->required();
  flow_cmd->add_option("--svg", svg_path, "SVG rendering of the cover");
  flow_cmd->add_option("--algorithm", algorithm, "dinic or edmonds-karp")
      ->check(CLI::IsMember({"dinic", "edmonds-karp"}));

  auto* merge_cmd = app.add_subcommand("merge-rects", "Merge touching rectangles");
  merge_cmd->add_option("--in", in_path, "rectangles JSON")->required();
  merge_cmd->add_option("--out", out_path, "merged rectangles JSON")->required();

  auto* greedy_cmd = app.add_subcommand("greedy", "Greedy multi-source BFS paths");
  greedy_cmd->add_option("--in", in_path, "GridInstance JSON")->required();
  greedy_cmd->add_option("--out", out_path, "GreedyResult JSON");

  auto* compare_cmd = app.add_subcommand("compare", "Compare greedy f' against max-flow f");
  compare_cmd->add_option("--in", in_path, "GridInstance JSON")->required();

  int n = 0, m = 0, trials = 0;
  std::uint64_t seed = 0;
  auto* search_cmd = app.add_subcommand("search-counterexample", "Search for an instance with f' < f");
  search_cmd->add_option("--n", n, "rows")->required()->check(CLI::Range(1, grid::kMaxGridSide));
  search_cmd->add_option("--m", m, "columns")->required()->check(CLI::Range(1, grid::kMaxGridSide));
  search_cmd->add_option("--trials", trials, "trial budget")->required()->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", seed, "RNG seed")->required();
  search_cmd->add_option("--out", out_path, "found GridInstance JSON")->required();

  std::string config_path;
  auto* ratio_cmd = app.add_subcommand("ratio-experiment", "f'/f statistics over random grids");
  ratio_cmd->add_option("--config", config_path, "experiment JSON")->required();
  ratio_cmd->add_option("--out", out_path, "statistics JSON");

  double c = 1e-10;
  std::string packing_path, packing_out;
  std::vector<std::string> svg_pair;
  auto* surgery_cmd = app.add_subcommand("surgery", "Reduce a packing to a good packing");
  surgery_cmd->add_option("--packing", packing_path, "Packing JSON")->required();
  surgery_cmd->add_option("--c", c, "tilt threshold in radians");
  surgery_cmd->add_option("--out", out_path, "SurgeryReport JSON")->required();
  surgery_cmd->add_option("--packing-out", packing_out, "resulting Packing JSON");
  surgery_cmd->add_option("--svg", svg_pair, "before.svg after.svg")->expected(2);

  auto* blowup_cmd = app.add_subcommand("blowup-experiment", "Surgery statistics over random packings");
  blowup_cmd->add_option("--config", config_path, "experiment JSON")->required();
  blowup_cmd->add_option("--out", out_path, "statistics JSON");

  std::string path_path;
  std::size_t a = 0, b = 0;
  bool verify = false;
  std::int64_t samples = 1'000'000;
  auto* pathwaste_cmd = app.add_subcommand("pathwaste", "Witness disks along a path");
  pathwaste_cmd->add_option("--packing", packing_path, "Packing JSON")->required();
  pathwaste_cmd->add_option("--path", path_path, "PlanePath JSON")->required();
  pathwaste_cmd->add_option("--a", a, "start square (0 = container)")->required();
  pathwaste_cmd->add_option("--b", b, "end square (0 = container)")->required();
  pathwaste_cmd->add_option("--out", out_path, "PathWitness JSON")->required();
  pathwaste_cmd->add_option("--c", c, "tilt threshold in radians");
  pathwaste_cmd->add_flag("--verify", verify, "estimate waste and check the bound");
  pathwaste_cmd->add_option("--samples", samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  pathwaste_cmd->add_option("--seed", seed, "RNG seed");

  std::string gen_kind, family = "uniform";
  double p = 0.2, x = 4.0, q = 0.0, delta = 0.0, tau = 0.0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance or packing");
  gen_cmd->add_option("kind", gen_kind, "grid, family or packing")
      ->required()
      ->check(CLI::IsMember({"grid", "family", "packing"}));
  gen_cmd->add_option("--n", n, "rows")->check(CLI::Range(1, grid::kMaxGridSide));
  gen_cmd->add_option("--m", m, "columns")->check(CLI::Range(1, grid::kMaxGridSide));
  gen_cmd->add_option("--p", p, "marking probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--family", family, "uniform, rings, comb, corridor, clusters")
      ->check(CLI::IsMember({"uniform", "rings", "comb", "corridor", "clusters"}));
  gen_cmd->add_option("--x", x, "container side")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--q", q, "deletion probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--delta", delta, "offset jitter")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--tau", tau, "tilt jitter")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", seed, "RNG seed")->required();
  gen_cmd->add_option("--out", out_path, "output JSON")->required();

  std::string instance_path, cover_path;
  auto* render_cmd = app.add_subcommand("render", "Render an instance or packing to SVG");
  render_cmd->add_option("--instance", instance_path, "GridInstance JSON");
  render_cmd->add_option("--cover", cover_path, "PathCover JSON drawn over the instance");
  render_cmd->add_option("--packing", packing_path, "Packing JSON");
  render_cmd->add_option("--c", c, "tilt threshold in radians");
  render_cmd->add_option("--out", out_path, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitInputError;
  }

  try {
    if (*flow_cmd) {
      const auto instance = io::instance_from_json(io::read_json_file(in_path));
      const auto alg = algorithm == "dinic" ? flow::Algorithm::kDinic : flow::Algorithm::kEdmondsKarp;
      const auto cover = flow::path_cover(instance, alg);
      io::write_json_file(out_path, io::to_json(cover));
      if (!svg_path.empty()) io::write_text_file(svg_path, svg::render_grid(instance, &cover));
      out << "f = " << cover.f << ", rectangles = " << cover.rectangles.size()
          << ", total perimeter = " << grid::total_perimeter(cover.rectangles) << "\n";
      if (auto errors = flow::validate_path_cover(instance, cover); !errors.empty()) {
        throw InvariantViolation(errors.front());
      }
    } else if (*merge_cmd) {
      const auto rects = io::rects_from_json(io::read_json_file(in_path));
      const auto trace = merge::merge_with_trace(rects);
      io::write_json_file(out_path, io::rects_to_json(trace.rects));
      out << "merged " << rects.size() << " -> " << trace.rects.size()
          << " rectangles, perimeter " << trace.perimeter_after_step.front() << " -> "
          << trace.perimeter_after_step.back() << "\n";
    } else if (*greedy_cmd) {
      const auto instance = io::instance_from_json(io::read_json_file(in_path));
      const auto result = greedy::greedy_bfs_paths(instance);
      if (!out_path.empty()) io::write_json_file(out_path, io::to_json(result));
      out << "f_prime = " << result.f_prime << "\n";
    } else if (*compare_cmd) {
      const auto instance = io::instance_from_json(io::read_json_file(in_path));
      const auto cmp = greedy::compare_f_prime_f(instance);
      out << "f_prime = " << cmp.f_prime << ", f = " << cmp.f << ": f_prime "
          << (cmp.f_prime < cmp.f ? "<" : "=") << " f, so f_prime ≤ f holds\n";
    } else if (*search_cmd) {
      const auto found = greedy::counterexample_search(trials, grid::GridDims(n, m), seed);
      if (found) {
        const auto cmp = greedy::compare_f_prime_f(*found);
        io::write_json_file(out_path, io::to_json(*found));
        out << "found instance with f_prime = " << cmp.f_prime << " < f = " << cmp.f << "\n";
      } else {
        out << "no instance with f_prime < f within " << trials << " trials\n";
      }
    } else if (*ratio_cmd) {
      const auto cfg = parse_experiment_config(io::read_json_file(config_path));
      if (cfg.kind != ExperimentConfig::Kind::kRatio) throw InputError("config.kind: expected ratio");
      const auto stats = greedy::ratio_experiment({cfg.n, cfg.m, cfg.p}, cfg.trials, cfg.seed);
      const std::string target = out_path.empty() ? cfg.output : out_path;
      if (target.empty()) throw InputError("no output path (--out or config.output)");
      io::write_json_file(target, io::to_json(stats));
      out << "trials = " << stats.trials << ", ratios = " << stats.ratios.size();
      if (stats.min_ratio) out << ", min = " << stats.min_ratio->num << "/" << stats.min_ratio->den;
      out << ", mean = " << stats.mean_ratio << "\n";
    } else if (*surgery_cmd) {
      const auto packing = io::packing_from_json(io::read_json_file(packing_path));
      const geometry::GoodnessConfig cfg{c};
      try {
        geometry::require_valid(cfg);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--c: ") + e.what());
      }
      surgery::SurgeryResult result;
      try {
        result = surgery::perform_surgery(packing, cfg);
      } catch (const surgery::InvalidPacking& e) {
        throw InputError(e.what());
      }
      io::write_json_file(out_path, io::to_json(result.report));
      if (!packing_out.empty()) io::write_json_file(packing_out, io::to_json(result.packing));
      if (svg_pair.size() == 2) {
        const auto overlay = surgery::OverlayGrid::for_container(packing.x);
        std::vector<geometry::Box> boxes;
        for (const auto& r : result.report.rectangles) boxes.push_back(overlay.rect_box(r));
        io::write_text_file(svg_pair[0], svg::render_packing(packing, cfg, boxes));
        io::write_text_file(svg_pair[1], svg::render_packing(result.packing, cfg, boxes));
      }
      out << "f = " << result.report.f << ", deleted = " << result.report.deleted.size()
          << ", inserted = " << result.report.inserted.size()
          << ", waste " << result.report.waste_before << " -> " << result.report.waste_after
          << ", blow_up = " << result.report.blow_up << "\n";
    } else if (*blowup_cmd) {
      const auto cfg = parse_experiment_config(io::read_json_file(config_path));
      if (cfg.kind != ExperimentConfig::Kind::kBlowup) throw InputError("config.kind: expected blowup");
      const auto stats = surgery::blow_up_experiment(
          {cfg.x_min, cfg.x_max, cfg.q, cfg.delta, cfg.tau, cfg.c}, cfg.trials, cfg.seed);
      const std::string target = out_path.empty() ? cfg.output : out_path;
      if (target.empty()) throw InputError("no output path (--out or config.output)");
      io::write_json_file(target, io::to_json(stats));
      out << "trials = " << stats.trials.size() << ", max blow_up = " << stats.max_blow_up
          << ", K = " << stats.max_overhead_per_f
          << (stats.max_overhead_per_f > 16.0 ? " (flagged: above 16)" : "") << "\n";
    } else if (*pathwaste_cmd) {
      const auto packing = io::packing_from_json(io::read_json_file(packing_path));
      const auto path = io::path_from_json(io::read_json_file(path_path));
      if (a > packing.squares.size() || b > packing.squares.size()) {
        throw InputError("--a/--b: square index out of range");
      }
      const geometry::GoodnessConfig cfg{c};
      pathwaste::PathWitness witness;
      try {
        geometry::require_valid(cfg);
        witness = pathwaste::build_witness(packing, path, a, b, cfg);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      json doc = io::to_json(witness);
      const auto violations = pathwaste::check_witness(packing, path, witness);
      doc["violations"] = violations;
      bool failed = !violations.empty();
      if (verify) {
        const auto report = pathwaste::verify_waste_bound(packing, witness, samples, seed);
        doc["verify"] = io::to_json(report);
        failed = failed || !report.passed();
        out << "waste = " << report.waste.value << " +- " << report.waste.half_width
            << ", bound = " << report.bound << ", max multiplicity = " << report.max_multiplicity
            << (report.passed() ? ", passed" : ", FAILED") << "\n";
      }
      io::write_json_file(out_path, doc);
      out << "samples = " << witness.sample_points.size() << ", theta = " << witness.theta_ab
          << (witness.uncovered ? ", uncovered sample found" : "") << "\n";
      if (failed) throw InvariantViolation("path witness check failed");
    } else if (*gen_cmd) {
      if (gen_kind == "packing") {
        io::write_json_file(out_path, io::to_json(gen::jittered_lattice({x, q, delta, tau}, seed)));
      } else {
        if (n < 1 || m < 1) throw InputError("gen " + gen_kind + ": --n and --m are required");
        const grid::GridDims dims(n, m);
        if (gen_kind == "grid") {
          io::write_json_file(out_path, io::to_json(greedy::uniform_instance(dims, p, seed)));
        } else {
          const std::pair<const char*, greedy::Family> families[] = {
              {"uniform", greedy::Family::kUniform}, {"rings", greedy::Family::kRings},
              {"comb", greedy::Family::kComb}, {"corridor", greedy::Family::kBlockedCorridor},
              {"clusters", greedy::Family::kClusters}};
          for (const auto& [name, fam] : families) {
            if (family == name) {
              io::write_json_file(out_path, io::to_json(greedy::make_family_instance(fam, dims, seed)));
            }
          }
        }
      }
    } else if (*render_cmd) {
      if (!instance_path.empty()) {
        const auto instance = io::instance_from_json(io::read_json_file(instance_path));
        if (!cover_path.empty()) {
          const auto cover = io::cover_from_json(io::read_json_file(cover_path));
          io::write_text_file(out_path, svg::render_grid(instance, &cover));
        } else {
          io::write_text_file(out_path, svg::render_grid(instance));
        }
      } else if (!packing_path.empty()) {
        const auto packing = io::packing_from_json(io::read_json_file(packing_path));
        io::write_text_file(out_path, svg::render_packing(packing, {c}));
      } else {
        throw InputError("render: need --instance or --packing");
      }
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const std::logic_error& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

}  // namespace packsurgeon::cli
