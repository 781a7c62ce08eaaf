#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbc/channel/degradation.hpp"
#include "qbc/region/models.hpp"

namespace qbc {

namespace detail {

struct Candidate {
  RealVector theta;
  Evaluation eval;
};

inline constexpr double kPersonalBonus = 1e-6;
inline constexpr double kTopSlack = 1e-4;

inline bool better_for_max_common(const Candidate& a, const Candidate& b) {
  return a.eval.common() + kPersonalBonus * a.eval.personal >
         b.eval.common() + kPersonalBonus * b.eval.personal + 1e-12;
}

// Penalized sweep: first the largest reachable common rate, then per grid
// value R the largest personal rate with common >= R.
template <class Model>
Frontier sweep(const Model& model, const OptimizerConfig& cfg, const std::string& region,
               std::size_t k) {
  cfg.validate();
  const auto threads = resolve_threads(cfg.threads);
  const auto n = static_cast<Eigen::Index>(model.num_params());
  constexpr std::uint64_t kMaxStage = 0xffffffffULL;

  // Largest common rate through a slack variable s; among (near) ties the
  // larger personal rate wins through a small bonus.
  auto climb = [&](const RealVector& start) {
    RealVector x(n + 1);
    x.head(n) = start;
    x(n) = model.evaluate(start).common();
    for (const double mu : cfg.penalty_schedule) {
      auto f = [&](const RealVector& y) {
        const Evaluation e = model.evaluate(y.head(n));
        return y(n) - mu * e.violation(y(n)) + kPersonalBonus * e.personal;
      };
      x = bfgs_maximize(f, x, cfg.max_iterations, cfg.fd_step, cfg.tolerance);
    }
    return Candidate{x.head(n), model.evaluate(x.head(n))};
  };
  std::vector<Candidate> tops(cfg.restarts);
  parallel_for(cfg.restarts, threads, [&](std::size_t r) {
    Rng rng = seeded_rng(cfg.seed, kMaxStage, r);
    tops[r] = climb(model.random_start(rng));
  });
  std::size_t best_top = 0;
  for (std::size_t r = 1; r < tops.size(); ++r)
    if (better_for_max_common(tops[r], tops[best_top])) best_top = r;
  Candidate top = tops[best_top];
  const double r_max = std::max(0.0, top.eval.common());

  const std::size_t grid = r_max < 1e-9 ? 1 : cfg.grid;
  std::vector<RatePoint> points;
  std::optional<RealVector> warm;
  for (std::size_t i = 0; i < grid; ++i) {
    const double target = grid == 1 ? 0.0 : r_max * static_cast<double>(i) / double(grid - 1);
    std::vector<RealVector> starts;
    if (warm) starts.push_back(*warm);
    starts.push_back(top.theta);
    const std::size_t fixed = starts.size();
    std::vector<Candidate> cands(fixed + cfg.restarts);
    parallel_for(cands.size(), threads, [&](std::size_t c) {
      RealVector x;
      if (c < fixed) {
        x = starts[c];
      } else {
        Rng rng = seeded_rng(cfg.seed, i, c - fixed);
        x = model.random_start(rng);
      }
      for (const double mu : cfg.penalty_schedule) {
        auto f = [&](const RealVector& y) {
          const Evaluation e = model.evaluate(y);
          return e.personal - mu * e.violation(target);
        };
        x = bfgs_maximize(f, x, cfg.max_iterations, cfg.fd_step, cfg.tolerance);
      }
      cands[c] = {x, model.evaluate(x)};
    });
    constexpr double kFeasible = 1e-4;
    std::size_t pick = 0;
    auto feasible = [&](const Candidate& c) { return c.eval.common() >= target - kFeasible; };
    for (std::size_t c = 1; c < cands.size(); ++c) {
      const bool fc = feasible(cands[c]), fp = feasible(cands[pick]);
      if (fc && !fp) pick = c;
      else if (fc == fp) {
        if (fc ? cands[c].eval.personal > cands[pick].eval.personal + 1e-12
               : cands[c].eval.violation(target) < cands[pick].eval.violation(target))
          pick = c;
      }
    }
    const Candidate& chosen = cands[pick];
    warm = chosen.theta;
    Witness w = model.witness(chosen.theta, chosen.eval);
    w.k = k;
    w.target_common = target;
    w.converged = feasible(chosen);
    points.push_back({clip_rate(chosen.eval.common()), clip_rate(chosen.eval.personal), std::move(w)});
  }
  // The max-common solution itself is a frontier candidate; climbing again
  // from the last grid solution often reaches it with a larger personal rate.
  if (warm && grid > 1) {
    Candidate polished = climb(*warm);
    if (better_for_max_common(polished, top)) top = std::move(polished);
  }
  // A top point that beats the last grid point only by less than the
  // feasibility slack, while giving up personal rate, adds nothing.
  const bool shadowed = !points.empty() && grid > 1 &&
                        points.back().common_rate >= top.eval.common() - kTopSlack &&
                        points.back().personal_rate > top.eval.personal;
  if (!shadowed) {
    Witness w = model.witness(top.theta, top.eval);
    w.k = k;
    w.target_common = r_max;
    points.push_back({clip_rate(top.eval.common()), clip_rate(top.eval.personal), std::move(w)});
  }
  Frontier fr;
  fr.region = region;
  fr.k = k;
  fr.t_size = model.t_size();
  fr.seed = cfg.seed;
  fr.points = pareto_filter(std::move(points));
  return fr;
}

inline std::size_t pow_size(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

inline void check_budget(std::size_t db, std::size_t dc, std::size_t k, std::size_t t_size,
                         std::size_t budget) {
  const double load = std::pow(double(db * dc), double(k)) * double(t_size);
  if (load > double(budget))
    throw BudgetError("matrix budget exceeded: (|B||C|)^k * |T| = " +
                      std::to_string(static_cast<long long>(load)) + " > " + std::to_string(budget));
}

}  // namespace detail

// |T| sufficient for the k-letter cq region.
inline std::size_t cq_cardinality_bound(const CqBroadcastChannel& w, std::size_t k) {
  const auto a = detail::pow_size(w.alphabet_size(), k);
  const auto b = detail::pow_size(w.bob_dim(), 2 * k) + detail::pow_size(w.charlie_dim(), 2 * k) - 1;
  return std::min(a, b);
}

inline std::size_t ensemble_cardinality_bound(const BroadcastChannel& bc, std::size_t k) {
  const auto a = detail::pow_size(bc.input_dim(), 2 * k);
  const auto b = detail::pow_size(bc.bob_dim(), 2 * k) + detail::pow_size(bc.charlie_dim(), 2 * k) - 1;
  return std::min(a, b);
}

inline Frontier cq_broadcast_frontier(const CqBroadcastChannel& w, std::size_t k,
                                      const OptimizerConfig& cfg) {
  if (k < 1) throw ValidationError("blocklength k must be at least 1");
  const auto t = cfg.t_size ? cfg.t_size : cq_cardinality_bound(w, k);
  detail::check_budget(w.bob_dim(), w.charlie_dim(), k, t, cfg.matrix_budget);
  const CqRateModel model(tensor_power(w, k), t, false, k, "cq");
  return detail::sweep(model, cfg, "cq", k);
}

struct SingleLetterReport {
  double commutator = 0.0;
  bool commuting = false;
  DegradationResult degradation;
  bool certified = false;
  std::optional<Frontier> frontier;  // present when certified
};

// Commuting Bob states plus a degrading map B -> C make the k = 1 region
// the capacity region; it is then solved with common rate I(T;C) and
// |T| <= min{|X|, |B|^2}.
inline SingleLetterReport certify_single_letter_cq(const CqBroadcastChannel& w,
                                                   const OptimizerConfig& cfg) {
  SingleLetterReport rep;
  std::vector<Matrix> bob;
  for (const auto& s : w.bob_states()) bob.push_back(s.matrix());
  rep.commutator = max_commutator(bob);
  rep.commuting = rep.commutator <= 1e-9;
  if (!rep.commuting) return rep;
  rep.degradation = degradedness_residual(w, 0, cfg);
  rep.certified = rep.degradation.certified;
  if (!rep.certified) return rep;
  const auto t = cfg.t_size ? cfg.t_size : std::min(w.alphabet_size(), w.bob_dim() * w.bob_dim());
  const CqRateModel model(w, t, true, 1, "cq-certified");
  Frontier fr = detail::sweep(model, cfg, "cq-certified", 1);
  fr.certified = true;
  rep.frontier = std::move(fr);
  return rep;
}

inline Frontier dephasing_cq_frontier(const BroadcastChannel& u, const OptimizerConfig& cfg) {
  if (!u.dephasing())
    throw ValidationError("channel does not carry a generalized dephasing specification");
  const auto& spec = *u.dephasing();
  const auto t = cfg.t_size ? cfg.t_size : spec.alphabet_size();
  const DephasingRateModel model(spec, t, "dephasing");
  Frontier fr = detail::sweep(model, cfg, "dephasing", 1);
  fr.certified = true;
  return fr;
}

inline Frontier ensemble_frontier(const BroadcastChannel& n, std::size_t k,
                                  const OptimizerConfig& cfg, const std::string& region) {
  if (k < 1) throw ValidationError("blocklength k must be at least 1");
  const auto t = cfg.t_size ? cfg.t_size : ensemble_cardinality_bound(n, k);
  detail::check_budget(n.bob_dim(), n.charlie_dim(), k, t, cfg.matrix_budget);
  const EnsembleRateModel model(tensor_power(n, k), t, k, region);
  return detail::sweep(model, cfg, region, k);
}

inline Frontier cq_entanglement_frontier(const BroadcastChannel& n, std::size_t k,
                                         const OptimizerConfig& cfg) {
  return ensemble_frontier(n, k, cfg, "cq-eg");
}

inline bool is_isometric(const KrausChannel& ch, double tol = 1e-9) {
  const auto min = minimal_kraus(ch);
  return min.ops().size() == 1 && is_isometry(min, tol);
}

// Same formula as the entanglement-assisted cq region with rates (Q, Q_B);
// dephasing channels use the tight single-letter form.
inline Frontier qq_frontier(const BroadcastChannel& u, std::size_t k, const OptimizerConfig& cfg) {
  if (!is_isometric(u.channel()))
    throw ValidationError("quantum-quantum region requires an isometric broadcast channel");
  if (u.dephasing()) return dephasing_cq_frontier(u, cfg);
  return ensemble_frontier(u, k, cfg, "qq");
}

// Closed-form outer boundary of the pinching channel: (Q_B, R) = (p, 1) for
// p <= 1/2 and (p, H(p)) above.
inline RatePoint pinching_boundary(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("pinching boundary parameter must lie in [0,1]");
  RatePoint r;
  r.personal_rate = p;
  r.common_rate = p <= 0.5 ? 1.0 : binary_entropy(p);
  return r;
}

inline WitnessRates evaluate_witness(const CqBroadcastChannel& w, const Witness& wit) {
  return evaluate_cq_witness(tensor_power(w, wit.k), wit);
}

inline WitnessRates evaluate_witness(const BroadcastChannel& bc, const Witness& wit) {
  if (wit.region == "dephasing") {
    if (!bc.dephasing()) throw ValidationError("dephasing witness needs a dephasing channel");
    return evaluate_dephasing_witness(*bc.dephasing(), wit);
  }
  if (wit.region == "cq" || wit.region == "cq-certified")
    return evaluate_cq_witness(tensor_power(classical_input(bc), wit.k), wit);
  return evaluate_ensemble_witness(tensor_power(bc, wit.k), wit);
}

// Rates of state merging from sigma = (id (x) N)(psi): I(A>BC) and I(B>C).
inline MergingRates merging_rates(const BroadcastChannel& n, const PureState& psi) {
  const auto& in = n.channel().input();
  if (in.size() != 1) throw ValidationError("merging rates need a single-label channel input");
  const auto& label = in.parts()[0].label;
  const DensityMatrix sigma = apply_on(n.channel(), psi.density(), label);
  Labels refs;
  for (const auto& l : sigma.layout().labels())
    if (l != n.bob() && l != n.charlie()) refs.push_back(l);
  MergingRates m;
  m.q_c_bound = coherent_information(sigma, refs, {n.bob(), n.charlie()});
  m.bc_distill = coherent_information(sigma, {n.bob()}, {n.charlie()});
  m.feasible = m.bc_distill > 1e-9;
  return m;
}

inline const std::string kRefBobLabel = "A_B";
inline const std::string kRefCharlieLabel = "A_C";

inline IndependentRates independent_rates(const BroadcastChannel& n, const PureState& psi) {
  const auto& in = n.channel().input();
  if (in.size() != 1) throw ValidationError("independent rates need a single-label channel input");
  if (!psi.layout().contains(kRefBobLabel) || !psi.layout().contains(kRefCharlieLabel))
    throw ValidationError("input state must carry reference labels A_B and A_C");
  const DensityMatrix sigma = apply_on(n.channel(), psi.density(), in.parts()[0].label);
  IndependentRates r;
  r.rate_b = coherent_information(sigma, {kRefBobLabel}, {n.bob()});
  r.rate_c = coherent_information(sigma, {kRefCharlieLabel}, {n.charlie()});
  r.feasible_b = r.rate_b > 1e-9;
  r.feasible_c = r.rate_c > 1e-9;
  return r;
}

}  // namespace qbc
