#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bslab/config.hpp"
#include "bslab/embedding.hpp"
#include "bslab/error.hpp"
#include "bslab/experiments.hpp"
#include "bslab/families.hpp"
#include "bslab/io.hpp"
#include "bslab/local_limit.hpp"
#include "bslab/parallel.hpp"
#include "bslab/pointsupport.hpp"
#include "bslab/potential.hpp"
#include "bslab/spectral.hpp"

namespace fs = std::filesystem;
using namespace bslab;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  bool plot = false;
  bool artifacts = false;
};

struct GraphSource {
  std::string input;
  std::string family;
  std::size_t size = 0;
  std::size_t degree = 3;
  std::uint64_t family_seed = 1;

  void attach(CLI::App* app) {
    app->add_option("--input", input, "edge-list file");
    app->add_option("--family", family, "planar_grid|torus_grid|path|cycle|complete|binary_tree|random_regular");
    app->add_option("--size", size, "family size parameter");
    app->add_option("--degree", degree, "random_regular degree");
    app->add_option("--family-seed", family_seed, "random_regular seed entry (mixed with --seed)");
  }

  std::optional<FamilySpec> spec(const Globals& g) const {
    if (family.empty()) return std::nullopt;
    const auto kind = parse_family_kind(family);
    detail::require(kind.has_value(), "unknown family '" + family + "'");
    FamilySpec f;
    f.kind = *kind;
    f.size = size;
    f.degree = degree;
    f.seed = f.kind == FamilyKind::kRandomRegular ? mix_seed(g.seed.value_or(1), family_seed) : 0;
    return f;
  }

  Graph load(const Globals& g) const {
    detail::require(input.empty() != family.empty(), "give exactly one of --input or --family");
    if (!input.empty()) return parse_edge_list(read_file(input));
    return generate(*spec(g));
  }
};

void emit(const Globals& g, const std::string& stem, const std::vector<Table>& tables,
          const std::vector<std::string>& summary = {}) {
  const bool json = g.format == "json";
  if (json) {
    std::cout << to_json(tables);
  } else {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (tables.size() > 1) std::cout << (i ? "\n" : "") << "# " << tables[i].name << "\n";
      std::cout << to_csv(tables[i]);
    }
  }
  for (const auto& line : summary) std::cerr << line << "\n";
  if (g.out.empty()) return;
  fs::create_directories(g.out);
  if (json) {
    write_file((fs::path(g.out) / (stem + ".json")).string(), to_json(tables));
  } else {
    for (const auto& t : tables) write_file((fs::path(g.out) / (t.name + ".csv")).string(), to_csv(t));
  }
  if (!summary.empty()) {
    std::string text;
    for (const auto& line : summary) text += line + "\n";
    write_file((fs::path(g.out) / (stem + "_summary.txt")).string(), text);
  }
}

void save(const Globals& g, const std::string& name, const std::string& contents) {
  if (g.out.empty()) return;
  fs::create_directories(g.out);
  write_file((fs::path(g.out) / name).string(), contents);
}

std::vector<Vertex> sphere(const Graph& graph, Vertex root, std::uint32_t r, bool at_least) {
  const auto d = distances_from(graph, root);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    if (d[v] == kUnreachable) continue;
    if (at_least ? d[v] >= r : d[v] == r) out.push_back(v);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"bslab: genus, expansion, capacity and local-limit experiments on graphs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "experiment config (JSON)");
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot", g.plot, "write SVG plots (e2)");
  app.add_flag("--artifacts", g.artifacts, "write serialized inputs and solutions next to the tables");

  // genus
  auto* genus = app.add_subcommand("genus", "Euler genus of a rotation system or minimum genus of a graph");
  GraphSource genus_src;
  genus_src.attach(genus);
  std::string genus_rotation;
  std::uint64_t genus_budget = kDefaultGenusBudget;
  bool genus_exhaustive = false;
  genus->add_option("--rotation", genus_rotation, "rotation-system file");
  genus->add_option("--budget", genus_budget, "rotation systems allowed in the exhaustive search");
  genus->add_flag("--exhaustive", genus_exhaustive, "minimum genus even for grid families");
  genus->callback([&] {
    Table t{"genus", {"vertices", "edges", "faces", "genus", "method"}, {}};
    if (!genus_rotation.empty()) {
      const RotationSystem rs = parse_rotation_system(read_file(genus_rotation));
      t.rows.push_back({std::to_string(rs.vertex_count()), std::to_string(rs.edge_count()),
                        std::to_string(trace_faces(rs).face_count()), std::to_string(euler_genus(rs)), "euler"});
    } else {
      const auto spec = genus_src.spec(g);
      if (spec && !genus_exhaustive &&
          (spec->kind == FamilyKind::kPlanarGrid || spec->kind == FamilyKind::kTorusGrid)) {
        const EmbeddedGraph eg = spec->kind == FamilyKind::kPlanarGrid ? planar_grid(spec->size) : torus_grid(spec->size);
        t.rows.push_back({std::to_string(eg.rotation.vertex_count()), std::to_string(eg.rotation.edge_count()),
                          std::to_string(trace_faces(eg.rotation).face_count()),
                          std::to_string(euler_genus(eg.rotation)), "euler"});
      } else {
        const Graph graph = genus_src.load(g);
        t.rows.push_back({std::to_string(graph.vertex_count()), std::to_string(graph.edge_count()), "",
                          std::to_string(min_genus_exhaustive(graph, genus_budget)), "exhaustive"});
      }
    }
    emit(g, "genus", {t});
  });

  // fill
  auto* fill = app.add_subcommand("fill", "triangulate every face of a rotation system");
  std::string fill_rotation, fill_family;
  std::size_t fill_size = 0, fill_random = 0, fill_valence = 0;
  fill->add_option("--rotation", fill_rotation, "rotation-system file");
  fill->add_option("--family", fill_family, "planar_grid|torus_grid");
  fill->add_option("--size", fill_size, "grid side");
  fill->add_option("--random", fill_random, "random rotation system with this many vertices");
  fill->add_option("--max-valence", fill_valence, "declared valence bound (default: observed)");
  fill->callback([&] {
    RotationSystem in;
    if (!fill_rotation.empty()) {
      in = parse_rotation_system(read_file(fill_rotation));
    } else if (fill_random > 0) {
      in = random_rotation_system(fill_random, fill_valence ? fill_valence : 6, mix_seed(g.seed.value_or(1), 0));
    } else {
      detail::require(fill_family == "planar_grid" || fill_family == "torus_grid",
                      "fill needs --rotation, --random or a grid --family");
      in = (fill_family == "planar_grid" ? planar_grid(fill_size) : torus_grid(fill_size)).rotation;
    }
    const std::size_t bound = fill_valence ? fill_valence : in.max_degree();
    const RotationSystem out = triangulate_fill(in, bound);
    const FillCheck c = check_fill(in, out);
    auto b = [](bool x) { return std::string(x ? "1" : "0"); };
    Table t{"fill",
            {"vertices", "edges_in", "edges_out", "genus", "valence_in", "valence_out", "triangles", "vertices_kept",
             "edges_kept", "valence_ok", "genus_kept"},
            {{std::to_string(in.vertex_count()), std::to_string(in.edge_count()), std::to_string(out.edge_count()),
              std::to_string(euler_genus(in)), std::to_string(in.max_degree()), std::to_string(out.max_degree()),
              b(c.triangles), b(c.vertices), b(c.edges), b(c.valence), b(c.genus)}}};
    save(g, "fill_input.txt", write_rotation_system(in));
    save(g, "fill_output.txt", write_rotation_system(out));
    emit(g, "fill", {t});
  });

  // cheeger
  auto* cheeger = app.add_subcommand("cheeger", "Cheeger constant: exact when small, spectral bounds otherwise");
  GraphSource cheeger_src;
  cheeger_src.attach(cheeger);
  cheeger->callback([&] {
    const Graph graph = cheeger_src.load(g);
    EigenOptions options;
    options.seed = g.seed.value_or(options.seed);
    const FiedlerPair f = fiedler_pair(graph, LaplacianKind::kCombinatorial, options);
    const CutResult sweep = sweep_cut(graph, f.vector);
    std::string exact;
    if (graph.vertex_count() <= kCheegerExactLimit) exact = format_number(cheeger_exact(graph).value());
    Table t{"cheeger",
            {"vertices", "edges", "h_exact", "h_lower", "h_upper", "lambda2"},
            {{std::to_string(graph.vertex_count()), std::to_string(graph.edge_count()), exact,
              format_number(f.lambda2 / 2.0), format_number(sweep.value()), format_number(f.lambda2)}}};
    emit(g, "cheeger", {t});
  });

  // cap
  auto* cap = app.add_subcommand("cap", "p-capacity of a source set relative to a ground set");
  GraphSource cap_src;
  cap_src.attach(cap);
  std::string cap_problem;
  std::vector<Vertex> cap_source, cap_ground;
  double cap_p = 2.0;
  std::optional<Vertex> cap_root;
  std::optional<std::uint32_t> cap_radius;
  cap->add_option("--problem", cap_problem, "capacity problem (JSON)");
  cap->add_option("--source", cap_source, "source vertices")->delimiter(',');
  cap->add_option("--ground", cap_ground, "ground vertices")->delimiter(',');
  cap->add_option("--root", cap_root, "root for a ball-to-sphere problem");
  cap->add_option("--radius", cap_radius, "ground is every vertex at distance >= radius from root");
  cap->add_option("--p", cap_p, "exponent p > 1");
  SolverOptions cap_options;
  cap->add_option("--max-outer", cap_options.max_outer_iterations, "outer iteration cap for p != 2");
  cap->callback([&] {
    CapacityProblem problem;
    if (!cap_problem.empty()) {
      problem = parse_capacity_problem(read_file(cap_problem));
    } else {
      problem.graph = cap_src.load(g);
      problem.exponent = cap_p;
      if (cap_root && cap_radius) {
        const auto d = distances_from(problem.graph, *cap_root);
        for (Vertex v = 0; v < problem.graph.vertex_count(); ++v) {
          if (d[v] <= 1) problem.source.push_back(v);
        }
        problem.ground = sphere(problem.graph, *cap_root, *cap_radius, true);
      } else {
        problem.source = cap_source;
        problem.ground = cap_ground;
      }
    }
    const PotentialSolution sol = p_capacity(problem, cap_options);
    save(g, "cap_problem.json", write_capacity_problem(problem));
    save(g, "cap_solution.json", write_potential_solution(sol));
    Table t{"cap", {"vertices", "p", "capacity", "iterations", "residual"},
            {{std::to_string(problem.graph.vertex_count()), format_number(problem.exponent), format_number(sol.energy),
              std::to_string(sol.iterations), format_number(sol.residual)}}};
    emit(g, "cap", {t});
  });

  // resistance
  auto* resistance = app.add_subcommand("resistance", "effective resistance between two vertex sets");
  GraphSource res_src;
  res_src.attach(resistance);
  std::vector<Vertex> res_source, res_ground;
  resistance->add_option("--source", res_source, "source vertices")->delimiter(',')->required();
  resistance->add_option("--ground", res_ground, "ground vertices")->delimiter(',')->required();
  resistance->callback([&] {
    const Graph graph = res_src.load(g);
    Table t{"resistance", {"vertices", "r_eff"},
            {{std::to_string(graph.vertex_count()), format_number(effective_resistance(graph, res_source, res_ground))}}};
    emit(g, "resistance", {t});
  });

  // escape
  auto* escape = app.add_subcommand("escape", "Monte Carlo escape probability against 1/(deg R_eff)");
  GraphSource esc_src;
  esc_src.attach(escape);
  Vertex esc_root = 0;
  std::vector<Vertex> esc_boundary;
  std::optional<std::uint32_t> esc_radius;
  std::uint64_t esc_trials = 100'000;
  escape->add_option("--root", esc_root, "start vertex");
  escape->add_option("--boundary", esc_boundary, "target vertices")->delimiter(',');
  escape->add_option("--radius", esc_radius, "target is the sphere at this distance");
  escape->add_option("--trials", esc_trials, "random walks");
  escape->callback([&] {
    const Graph graph = esc_src.load(g);
    const std::vector<Vertex> boundary = esc_radius ? sphere(graph, esc_root, *esc_radius, false) : esc_boundary;
    const EscapeEstimate est = escape_probability_mc(graph, esc_root, boundary, esc_trials, g.seed.value_or(1));
    const Vertex src[] = {esc_root};
    const double reff = effective_resistance(graph, src, boundary);
    const double predicted = 1.0 / (static_cast<double>(graph.degree(esc_root)) * reff);
    Table t{"escape", {"trials", "escapes", "estimate", "std_error", "predicted"},
            {{std::to_string(est.trials), std::to_string(est.escapes), format_number(est.estimate),
              format_number(est.std_error), format_number(predicted)}}};
    emit(g, "escape", {t});
  });

  // bsdist
  auto* bsdist = app.add_subcommand("bsdist", "depth-r rooted-ball distribution of a graph");
  GraphSource bs_src;
  bs_src.attach(bsdist);
  std::uint32_t bs_radius = 1;
  std::size_t bs_samples = 0;
  std::string bs_compare;
  bsdist->add_option("--radius", bs_radius, "ball depth");
  bsdist->add_option("--samples", bs_samples, "sampled roots (0: every vertex)");
  bsdist->add_option("--compare", bs_compare, "distribution file to compare against (TV distance)");
  bsdist->callback([&] {
    const Graph graph = bs_src.load(g);
    std::optional<RootSample> sample;
    if (bs_samples > 0) sample = RootSample{bs_samples, g.seed.value_or(1)};
    const EmpiricalDistribution d = neighborhood_distribution(graph, bs_radius, sample);
    save(g, "bsdist.txt", write_distribution(d));
    Table t{"bsdist", {"code", "count", "probability"}, {}};
    for (const auto& [code, c] : d.counts()) {
      t.rows.push_back({code, std::to_string(c), format_number(static_cast<double>(c) / static_cast<double>(d.total()))});
    }
    std::vector<std::string> summary;
    if (!bs_compare.empty()) {
      const auto other = parse_distribution(read_file(bs_compare));
      const ExactFraction tv = tv_distance_exact(d, other);
      summary.push_back("tv " + std::to_string(tv.numerator) + "/" + std::to_string(tv.denominator) + " = " +
                        format_number(tv.value()));
    }
    emit(g, "bsdist", {t}, summary);
  });

  // supported
  auto* supported = app.add_subcommand("supported", "(delta, s)-supported points of a finite metric space");
  std::string sup_points, sup_mode = "necessary";
  std::size_t sup_uniform = 0, sup_dim = 2;
  double sup_delta = 1.0 / 3.0;
  std::vector<std::size_t> sup_s{2};
  std::optional<std::size_t> sup_w;
  supported->add_option("--points", sup_points, "point-cloud or distance-matrix file");
  supported->add_option("--uniform", sup_uniform, "uniform random points in the unit cube");
  supported->add_option("--dim", sup_dim, "dimension for --uniform");
  supported->add_option("--delta", sup_delta, "delta in (0, 1)");
  supported->add_option("--s", sup_s, "values of s")->delimiter(',');
  supported->add_option("--mode", sup_mode, "centre mode")->check(CLI::IsMember({"necessary", "sufficient"}));
  supported->add_option("--w", sup_w, "query a single point");
  supported->callback([&] {
    detail::require(sup_points.empty() != (sup_uniform == 0), "give exactly one of --points or --uniform");
    const FiniteMetric c = !sup_points.empty() ? parse_finite_metric(read_file(sup_points))
                                               : uniform_cube(sup_uniform, sup_dim, g.seed.value_or(1));
    const CenterMode mode = sup_mode == "necessary" ? CenterMode::kNecessary : CenterMode::kSufficient;
    Table t{"supported", {"points", "delta", "s", "mode", "count", "s_count_over_n"}, {}};
    if (sup_w) {
      t.columns = {"w", "isolation_radius", "support_number", "s", "supported"};
      const std::size_t number = support_number(c, *sup_w, sup_delta, mode);
      for (std::size_t s : sup_s) {
        t.rows.push_back({std::to_string(*sup_w), format_number(isolation_radius(c, *sup_w)), std::to_string(number),
                          std::to_string(s), number >= s ? "1" : "0"});
      }
    } else {
      const auto counts = count_supported(c, sup_delta, sup_s, mode);
      for (std::size_t i = 0; i < sup_s.size(); ++i) {
        t.rows.push_back({std::to_string(c.size()), format_number(sup_delta), std::to_string(sup_s[i]), sup_mode,
                          std::to_string(counts[i]),
                          format_number(static_cast<double>(sup_s[i] * counts[i]) / static_cast<double>(c.size()))});
      }
    }
    emit(g, "supported", {t});
  });

  // e1..e5
  for (ExperimentId id : {ExperimentId::kE1, ExperimentId::kE2, ExperimentId::kE3, ExperimentId::kE4, ExperimentId::kE5}) {
    const std::string name(experiment_name(id));
    auto* sub = app.add_subcommand(name, "run experiment " + name);
    sub->callback([&g, id, name] {
      ExperimentConfig cfg = default_config(id);
      if (!g.config.empty()) {
        cfg = parse_config(read_file(g.config));
        detail::require(cfg.id == id, "config is for experiment " + std::string(experiment_name(cfg.id)));
      }
      if (g.seed) cfg.seed = *g.seed;
      const ExperimentReport rep = run_experiment(cfg, g.artifacts && !g.out.empty());
      emit(g, name, rep.tables, rep.summary);
      if (g.plot && !rep.svg.empty()) save(g, name + "_profile.svg", rep.svg);
      if (!g.out.empty()) {
        save(g, name + "_config.json", write_config(cfg));
        if (!rep.artifacts.empty()) fs::create_directories(fs::path(g.out) / "artifacts");
        for (const auto& [file, contents] : rep.artifacts) save(g, "artifacts/" + file, contents);
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
