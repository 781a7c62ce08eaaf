#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbc/channel/degradation.hpp"
#include "qbc/info/quantities.hpp"
#include "qbc/io/results.hpp"
#include "qbc/io/spec.hpp"
#include "qbc/oracle/classical.hpp"
#include "qbc/oracle/grid.hpp"
#include "qbc/region/frontier.hpp"

namespace qbc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidate = 2;
inline constexpr int kExitBudget = 3;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file '" + path + "'");
  out << text;
}

// A file path, or the name of a builtin channel.
inline io::ChannelSpec load_channel(const std::string& ref) {
  if (std::filesystem::is_regular_file(ref)) return io::parse_channel_spec(read_file(ref));
  for (const auto& n : io::builtin_names())
    if (n == ref) return io::make_builtin(ref);
  throw ValidationError("--channel: '" + ref + "' is neither a readable file nor a builtin");
}

namespace detail {

inline std::string join_labels(const Labels& ls) {
  std::string s;
  for (const auto& l : ls) s += l;
  return s;
}

inline io::Json quantities_report(const DensityMatrix& rho) {
  const auto labels = rho.layout().labels();
  const auto n = labels.size();
  io::Json out;
  out["layout"] = io::layout_to(rho.layout());
  io::Json ent = io::Json::object();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Labels sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(labels[i]);
    ent[join_labels(sub)] = entropy(rho, sub);
  }
  out["entropy"] = ent;
  io::Json ce = io::Json::object(), ci = io::Json::object(), mi = io::Json::object(),
           cmi = io::Json::object();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      ce[labels[a] + "|" + labels[b]] = conditional_entropy(rho, {labels[a]}, {labels[b]});
      ci[labels[a] + ">" + labels[b]] = coherent_information(rho, {labels[a]}, {labels[b]});
      if (a < b) mi[labels[a] + ";" + labels[b]] = mutual_information(rho, {labels[a]}, {labels[b]});
      for (std::size_t c = 0; c < n; ++c)
        if (a < b && c != a && c != b)
          cmi[labels[a] + ";" + labels[b] + "|" + labels[c]] =
              conditional_mutual_information(rho, {labels[a]}, {labels[b]}, {labels[c]});
    }
  out["conditional_entropy"] = ce;
  out["coherent_information"] = ci;
  out["mutual_information"] = mi;
  out["conditional_mutual_information"] = cmi;
  return out;
}

// {"dims": {...}, "matrix": [[...]]} or "vector": [...]; or a cq state
// {"kind": "cq", "dims": {...}, "weights": [...], "conditionals": [...]}.
inline io::Json run_quantities(const std::string& path) {
  const io::Json doc = io::parse_text(read_file(path), "state");
  const SystemLayout layout = io::layout_from(io::require(doc, "dims", "state"), "dims");
  const auto d = layout.total_dim();
  if (doc.value("kind", std::string{}) == "cq") {
    const auto weights = io::require(doc, "weights", "state").get<std::vector<double>>();
    const auto& conds = io::require(doc, "conditionals", "state");
    std::vector<DensityMatrix> rho;
    for (std::size_t x = 0; x < conds.size(); ++x) {
      const std::string where = "conditionals[" + std::to_string(x) + "]";
      rho.push_back(io::detail::with_context(
          where, [&] { return DensityMatrix(io::matrix_from(conds[x], d, d, where), layout); }));
    }
    const CqState cq(weights, rho);
    std::string x = "X";
    while (layout.contains(x)) x += "'";
    io::Json out = quantities_report(embed(cq, x));
    out["holevo_information"] = holevo_information(cq);
    return out;
  }
  if (doc.contains("vector")) {
    const PureState psi = io::detail::with_context(
        "vector", [&] { return PureState(io::vector_from(doc.at("vector"), d, "vector"), layout); });
    return quantities_report(psi.density());
  }
  const DensityMatrix rho = io::detail::with_context("matrix", [&] {
    return DensityMatrix(io::matrix_from(io::require(doc, "matrix", "state"), d, d, "matrix"), layout);
  });
  return quantities_report(rho);
}

inline io::Json degradation_report(const DegradationResult& r) {
  io::Json ops = io::Json::array();
  for (const auto& k : r.degrading_map.ops()) ops.push_back(io::matrix_to(k));
  return io::Json{{"residual", r.residual},
                  {"certified", r.certified},
                  {"method", r.method},
                  {"degrading_map", {{"kraus", ops}}}};
}

inline void emit_frontier(const std::vector<RatePoint>& points, const std::string& out_path,
                          std::ostream& out) {
  const std::string csv = io::frontier_csv(points);
  if (out_path.empty()) out << csv;
  else write_file(out_path, csv);
}

inline void emit_sidecar(const Frontier& f, const io::Json& channel, const std::string& out_path) {
  if (out_path.empty()) return;
  write_file(out_path + ".witness.json", io::frontier_to(f, channel).dump(2) + "\n");
}

// Re-evaluates every witness of a sidecar file; returns the worst deviation.
inline double verify_sidecar(const io::Json& doc, std::ostream& out) {
  const io::ChannelSpec spec = io::parse_channel_document(io::require(doc, "channel", "witness file"));
  double worst = 0.0;
  const auto& pts = io::require(doc, "points", "witness file");
  for (const auto& p : pts) {
    const Witness w = io::witness_from(io::require(p, "witness", "point"));
    WitnessRates r;
    if (spec.quantum) r = evaluate_witness(*spec.quantum, w);
    else r = evaluate_witness(*spec.cq, w);
    const double dc = std::abs(clip_rate(r.common) - p.at("common_rate").get<double>());
    const double dp = std::abs(clip_rate(r.personal) - p.at("personal_rate").get<double>());
    worst = std::max({worst, dc, dp});
    out << p.at("witness_id").get<std::size_t>() << "," << io::format_rate(clip_rate(r.common)) << ","
        << io::format_rate(clip_rate(r.personal)) << "," << io::format_rate(std::max(dc, dp)) << "\n";
  }
  return worst;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Capacity-region frontiers of quantum broadcast channels"};
  app.require_subcommand(1);

  OptimizerConfig cfg;
  std::string channel_ref, out_path, state_path, witness_path, stochastic_path;
  std::size_t k = 1, points = 11, mesh = 12, r_grid = 33, t_size = 0, bound = 0, extra = 2;
  bool reverse = false;

  auto* region = app.add_subcommand("region", "optimize a rate region frontier");
  std::string region_kind;
  region->add_option("kind", region_kind, "cq | cq-eg | dephasing | qq")
      ->required()
      ->check(CLI::IsMember({"cq", "cq-eg", "dephasing", "qq"}));
  region->add_option("--channel", channel_ref, "channel spec file or builtin name")->required();
  region->add_option("--k", k, "blocklength");
  region->add_option("--grid", cfg.grid, "common-rate grid points");
  region->add_option("--restarts", cfg.restarts, "random restarts per grid point");
  region->add_option("--seed", cfg.seed, "random seed");
  region->add_option("--t-size", cfg.t_size, "auxiliary alphabet size (default: cardinality bound)");
  region->add_option("--budget", cfg.matrix_budget, "matrix budget (|B||C|)^k |T|");
  region->add_option("--threads", cfg.threads, "worker threads");
  region->add_option("--out", out_path, "CSV output (witnesses go to <out>.witness.json)");

  auto* quantities = app.add_subcommand("quantities", "entropic quantities of a state");
  quantities->add_option("--state", state_path, "state file")->required();

  auto* check = app.add_subcommand("check", "structural checks");
  auto* degraded = check->add_subcommand("degraded", "search for a degrading map B -> C");
  check->require_subcommand(1);
  degraded->add_option("--channel", channel_ref, "channel spec file or builtin name")->required();
  degraded->add_flag("--reverse", reverse, "search C -> B instead");
  degraded->add_option("--seed", cfg.seed, "random seed");

  auto* oracle = app.add_subcommand("oracle", "brute-force reference frontiers");
  oracle->require_subcommand(1);
  auto* grid = oracle->add_subcommand("grid", "exhaustive p(t,x) enumeration");
  grid->add_option("--channel", channel_ref)->required();
  grid->add_option("--t-size", t_size)->required();
  grid->add_option("--mesh", mesh);
  grid->add_option("--r-grid", r_grid);
  grid->add_option("--out", out_path);
  auto* card = oracle->add_subcommand("cardinality", "frontier gain from a larger |T|");
  card->add_option("--channel", channel_ref)->required();
  card->add_option("--bound", bound)->required();
  card->add_option("--extra", extra);
  card->add_option("--mesh", mesh);
  auto* classical = oracle->add_subcommand("classical", "degraded classical broadcast region");
  classical->add_option("--stochastic", stochastic_path,
                        "file with p_y_given_x and p_z_given_y (column stochastic)")
      ->required();
  classical->add_option("--mesh", mesh);
  classical->add_option("--t-size", t_size);
  classical->add_option("--out", out_path);

  auto* boundary = app.add_subcommand("pinching-boundary", "closed-form pinching boundary");
  boundary->add_option("--points", points)->check(CLI::PositiveNumber);
  boundary->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "re-evaluate the witnesses of a frontier");
  verify->add_option("--witness", witness_path, "sidecar witness file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ERR_VALIDATE: " << e.what() << "\n";
    return kExitValidate;
  }

  try {
    if (region->parsed()) {
      const io::ChannelSpec spec = load_channel(channel_ref);
      Frontier f;
      if (region_kind == "cq") f = cq_broadcast_frontier(spec.as_cq(), k, cfg);
      else if (region_kind == "cq-eg") f = cq_entanglement_frontier(spec.as_quantum(), k, cfg);
      else if (region_kind == "dephasing") f = dephasing_cq_frontier(spec.as_quantum(), cfg);
      else f = qq_frontier(spec.as_quantum(), k, cfg);
      detail::emit_frontier(f.points, out_path, out);
      detail::emit_sidecar(f, io::serialize(spec), out_path);
    } else if (quantities->parsed()) {
      out << detail::run_quantities(state_path).dump(2) << "\n";
    } else if (degraded->parsed()) {
      const io::ChannelSpec spec = load_channel(channel_ref);
      DegradationResult r;
      if (spec.cq && !reverse) {
        r = degradedness_residual(*spec.cq, 0, cfg);
      } else {
        auto [to_b, to_c] = spec.quantum ? marginals(*spec.quantum)
                                         : throw ValidationError("--reverse needs a quantum channel");
        r = reverse ? degradedness_residual(to_c, to_b, 0, cfg)
                    : degradedness_residual(to_b, to_c, 0, cfg);
      }
      out << detail::degradation_report(r).dump(2) << "\n";
    } else if (grid->parsed()) {
      const io::ChannelSpec spec = load_channel(channel_ref);
      const auto res = oracle::grid_cq_frontier(spec.as_cq(), t_size, mesh, r_grid);
      detail::emit_frontier(res.pareto.points, out_path, out);
      detail::emit_sidecar(res.pareto, io::serialize(spec), out_path);
    } else if (card->parsed()) {
      const io::ChannelSpec spec = load_channel(channel_ref);
      const auto rep = oracle::cardinality_probe(spec.as_cq(), bound, extra, mesh);
      io::Json j{{"bound", bound},
                 {"extra", extra},
                 {"mesh", mesh},
                 {"mesh_error", rep.mesh_error},
                 {"improvement", rep.improvement},
                 {"personal_improvement", rep.personal_improvement},
                 {"common_improvement", rep.common_improvement},
                 {"base", io::frontier_to(rep.base.pareto, io::serialize(spec))},
                 {"extended", io::frontier_to(rep.extended.pareto, io::serialize(spec))}};
      out << j.dump(2) << "\n";
    } else if (classical->parsed()) {
      const io::Json doc = io::parse_text(read_file(stochastic_path), "stochastic");
      auto real_matrix = [&](const std::string& key) {
        const auto rows = io::require(doc, key, "stochastic").get<std::vector<std::vector<double>>>();
        if (rows.empty() || rows.front().empty()) throw ValidationError(key + ": empty matrix");
        Eigen::MatrixXd m(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r].size() != rows.front().size()) throw ValidationError(key + ": ragged matrix");
          for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
        }
        return m;
      };
      const Frontier f = oracle::classical_degraded_region(real_matrix("p_y_given_x"),
                                                           real_matrix("p_z_given_y"), mesh, t_size);
      detail::emit_frontier(f.points, out_path, out);
    } else if (boundary->parsed()) {
      std::vector<RatePoint> rows;
      for (std::size_t i = 0; i < points; ++i) {
        const double p = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        const RatePoint b = pinching_boundary(p);
        rows.push_back({b.common_rate, b.personal_rate, {}});
      }
      // Rows are listed as (common R, personal Q_B) like every other frontier.
      detail::emit_frontier(rows, out_path, out);
    } else if (verify->parsed()) {
      const double worst =
          detail::verify_sidecar(io::parse_text(read_file(witness_path), "witness file"), out);
      if (worst > 1e-6) {
        err << "ERR_VALIDATE: witness re-evaluation deviates by " << worst << "\n";
        return kExitValidate;
      }
    }
  } catch (const BudgetError& e) {
    err << "ERR_BUDGET: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "ERR_VALIDATE: " << e.what() << "\n";
    return kExitValidate;
  } catch (const nlohmann::json::exception& e) {
    err << "ERR_VALIDATE: " << e.what() << "\n";
    return kExitValidate;
  }
  return kExitOk;
}

}  // namespace qbc::cli
