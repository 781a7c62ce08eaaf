#include <catch_amalgamated.hpp>

#include "channel_support.hpp"
#include "frontier_support.hpp"
#include "qbc/region/frontier.hpp"

using namespace qbc;
using namespace qbc::testing;
using Catch::Approx;

namespace {

OptimizerConfig small_config() {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.grid = 9;
  cfg.max_iterations = 100;
  return cfg;
}

template <class Channel>
void check_witnesses(const Channel& ch, const Frontier& f) {
  for (const auto& p : f.points) {
    const auto r = evaluate_witness(ch, p.witness);
    CHECK(std::abs(r.common - p.witness.common) <= 1e-6);
    CHECK(std::abs(r.personal - p.witness.personal) <= 1e-6);
    CHECK(std::abs(clip_rate(r.common) - p.common_rate) <= 1e-6);
    CHECK(std::abs(clip_rate(r.personal) - p.personal_rate) <= 1e-6);
  }
}

void check_monotone(const Frontier& f) {
  REQUIRE_FALSE(f.points.empty());
  for (std::size_t i = 1; i < f.points.size(); ++i) {
    CHECK(f.points[i].common_rate > f.points[i - 1].common_rate);
    CHECK(f.points[i].personal_rate <= f.points[i - 1].personal_rate);
  }
  for (const auto& p : f.points) {
    CHECK(p.common_rate >= -1e-9);
    CHECK(p.personal_rate >= -1e-9);
  }
}

CqBroadcastChannel noncommuting_cq() {
  const SystemLayout l{{kBobLabel, 2}, {kCharlieLabel, 1}};
  return CqBroadcastChannel({DensityMatrix::basis(l, 0), plus_state(kBobLabel).density().relabeled(l)});
}

}  // namespace

TEST_CASE("pareto filter and hull", "[region]") {
  std::vector<RatePoint> pts(5);
  const double raw[5][2] = {{0.0, 1.0}, {0.5, 0.6}, {0.5, 0.7}, {0.2, 0.5}, {1.0, 0.0}};
  for (int i = 0; i < 5; ++i) {
    pts[i].common_rate = raw[i][0];
    pts[i].personal_rate = raw[i][1];
  }
  Frontier f;
  f.points = pareto_filter(pts);
  REQUIRE(f.points.size() == 3);
  CHECK(f.points[1].personal_rate == 0.7);
  CHECK(f.value_at(0.25) == Approx(0.85));
  CHECK(f.value_at(1.0) == 0.0);
  CHECK(f.value_at(1.1) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("noiseless bit cq frontier", "[region][cq]") {
  const auto w = make_noiseless_bit_cq();
  const auto f = cq_broadcast_frontier(w, 1, small_config());
  check_monotone(f);
  CHECK(f.points.front().common_rate == Approx(0.0).margin(1e-3));
  CHECK(f.points.front().personal_rate == Approx(1.0).margin(1e-3));
  CHECK(f.points.back().common_rate == Approx(1.0).margin(1e-3));
  CHECK(f.points.back().personal_rate == Approx(0.0).margin(1e-3));
  for (const auto& p : f.points) CHECK(p.common_rate + p.personal_rate <= 1.0 + 1e-6);
  check_witnesses(w, f);
  CHECK(f.t_size == cq_cardinality_bound(w, 1));
}

TEST_CASE("constant cq channel", "[region][cq]") {
  const auto w = make_constant_cq();
  const auto f = cq_broadcast_frontier(w, 1, small_config());
  REQUIRE(f.points.size() == 1);
  CHECK(f.points[0].common_rate == 0.0);
  CHECK(f.points[0].personal_rate == 0.0);
}

TEST_CASE("single-letter certification", "[region][certify]") {
  const auto cfg = small_config();
  const auto nc = certify_single_letter_cq(noncommuting_cq(), cfg);
  CHECK_FALSE(nc.commuting);
  CHECK_FALSE(nc.certified);
  CHECK(nc.commutator > 0.1);
  CHECK_FALSE(nc.frontier.has_value());

  const auto same = certify_single_letter_cq(make_noiseless_bit_cq(), cfg);
  CHECK(same.commuting);
  CHECK(same.certified);
  REQUIRE(same.frontier.has_value());
  CHECK(same.frontier->certified);
  CHECK(same.frontier->region == "cq-certified");
  CHECK(same.degradation.residual <= 1e-9);
  const auto [b, c] = [] {
    const auto w = make_noiseless_bit_cq();
    return std::pair{w.bob_states(), w.charlie_states()};
  }();
  for (std::size_t x = 0; x < b.size(); ++x)
    CHECK(max_abs(same.degradation.degrading_map.apply(b[x].matrix()) - c[x].matrix()) < 1e-9);
  check_witnesses(make_noiseless_bit_cq(), *same.frontier);
}

TEST_CASE("dephasing frontier of the pinching channel", "[region][dephasing]") {
  OptimizerConfig cfg;
  const auto f = dephasing_cq_frontier(make_pinching(), cfg);
  check_monotone(f);
  CHECK(f.certified);
  for (const double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto b = pinching_boundary(p);
    CHECK(distance_to_boundary(f, b.common_rate, b.personal_rate) <= 1e-2);
  }
  CHECK(f.points.front().personal_rate == Approx(1.0).margin(1e-2));
  CHECK(f.max_common() == Approx(1.0).margin(1e-2));
  check_witnesses(make_pinching(), f);
  CHECK_THROWS_AS(dephasing_cq_frontier(make_identity_to_bob(), cfg), ValidationError);
}

TEST_CASE("entanglement-assisted cq region", "[region][ensemble]") {
  auto cfg = small_config();
  cfg.t_size = 2;
  const auto id = make_identity_to_bob();
  const auto f = cq_entanglement_frontier(id, 1, cfg);
  check_monotone(f);
  CHECK(f.points.front().common_rate == 0.0);
  CHECK(f.points.front().personal_rate == Approx(1.0).margin(1e-3));
  check_witnesses(id, f);

  const BroadcastChannel constant(
      constant_channel(SystemLayout{{kInputLabel, 2}},
                       DensityMatrix::basis(SystemLayout{{kBobLabel, 2}, {kCharlieLabel, 1}}, 0)));
  const auto fc = cq_entanglement_frontier(constant, 1, cfg);
  REQUIRE(fc.points.size() == 1);
  CHECK(fc.points[0].common_rate == 0.0);
  CHECK(fc.points[0].personal_rate == 0.0);
}

TEST_CASE("entanglement-assisted pinching against the dephasing form", "[region][ensemble][slow]") {
  auto cfg = small_config();
  cfg.t_size = 3;
  cfg.grid = 17;
  cfg.restarts = 2;
  const auto p = make_pinching();
  const auto eg = cq_entanglement_frontier(p, 1, cfg);
  const auto dep = dephasing_cq_frontier(p, OptimizerConfig{});
  check_witnesses(p, eg);
  CHECK(boundary_gap(eg, dep) <= 2e-2);
}

TEST_CASE("quantum-quantum region", "[region][qq]") {
  const auto cfg = small_config();
  const auto g = qq_frontier(make_ghz_copy(), 1, cfg);
  REQUIRE(g.points.size() == 1);
  CHECK(g.points[0].common_rate == Approx(1.0).margin(1e-3));
  CHECK(g.points[0].personal_rate == Approx(0.0).margin(1e-9));

  auto small = cfg;
  small.t_size = 2;
  const auto id = qq_frontier(make_identity_to_bob(), 1, small);
  REQUIRE(id.points.size() == 1);
  CHECK(id.points[0].common_rate == 0.0);
  CHECK(id.points[0].personal_rate == Approx(1.0).margin(1e-3));

  // Identical computation to the entanglement-assisted cq region.
  const auto eg = cq_entanglement_frontier(make_identity_to_bob(), 1, small);
  REQUIRE(eg.points.size() == id.points.size());
  for (std::size_t i = 0; i < eg.points.size(); ++i) {
    CHECK(std::abs(eg.points[i].common_rate - id.points[i].common_rate) <= 1e-9);
    CHECK(std::abs(eg.points[i].personal_rate - id.points[i].personal_rate) <= 1e-9);
  }

  const auto dep = dephasing_cq_frontier(make_pinching(), OptimizerConfig{});
  const auto pq = qq_frontier(make_pinching(), 1, OptimizerConfig{});
  REQUIRE(pq.points.size() == dep.points.size());
  for (std::size_t i = 0; i < pq.points.size(); ++i)
    CHECK(std::abs(pq.points[i].personal_rate - dep.points[i].personal_rate) <= 1e-9);

  Rng rng(kSeed);
  const BroadcastChannel noisy(random_channel(SystemLayout{{kInputLabel, 2}},
                                              SystemLayout{{kBobLabel, 2}, {kCharlieLabel, 1}}, 2, rng));
  CHECK_THROWS_AS(qq_frontier(noisy, 1, cfg), ValidationError);
}

TEST_CASE("pinching closed-form boundary", "[region]") {
  CHECK(pinching_boundary(0.0).common_rate == 1.0);
  CHECK(pinching_boundary(0.0).personal_rate == 0.0);
  CHECK(pinching_boundary(0.5).common_rate == 1.0);
  CHECK(pinching_boundary(0.5).personal_rate == 0.5);
  CHECK(pinching_boundary(1.0).common_rate == Approx(0.0).margin(1e-15));
  CHECK(pinching_boundary(1.0).personal_rate == 1.0);
  CHECK(pinching_boundary(0.75).common_rate == Approx(0.8112781245).margin(1e-9));
  CHECK_THROWS_AS(pinching_boundary(1.5), ValidationError);
  CHECK_THROWS_AS(pinching_boundary(-0.1), ValidationError);
}

TEST_CASE("merging rates", "[region][merging]") {
  const auto e = epr("A", kInputLabel);
  const auto id = merging_rates(make_identity_to_bob(), e);
  CHECK(id.q_c_bound == Approx(1.0).margin(1e-9));
  CHECK(id.bc_distill == Approx(-1.0).margin(1e-9));
  CHECK_FALSE(id.feasible);

  const auto g = merging_rates(make_ghz_copy(), e);
  CHECK(g.q_c_bound == Approx(1.0).margin(1e-9));
  CHECK(g.bc_distill == Approx(0.0).margin(1e-9));
  CHECK_FALSE(g.feasible);

  CHECK_THROWS_AS(merging_rates(make_pinching(), e), DimensionMismatch);
}

TEST_CASE("merging with a pre-shared Bob-Charlie pair", "[region][merging]") {
  // V|x> = |x>^{B1} |x>^{C1} |Phi>^{B2 C2}, with B = B1 B2 and C = C1 C2.
  Matrix v = Matrix::Zero(16, 2);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t e = 0; e < 2; ++e) v((x * 2 + e) * 4 + x * 2 + e, x) = s;
  const BroadcastChannel n(KrausChannel({v}, SystemLayout{{kInputLabel, 2}},
                                        SystemLayout{{kBobLabel, 4}, {kCharlieLabel, 4}}));
  const auto psi = epr("A", kInputLabel);
  const auto m = merging_rates(n, psi);

  Vector out = Vector::Zero(32);
  for (std::size_t a = 0; a < 2; ++a) out.segment(a * 16, 16) = s * v.col(a);
  const std::vector<std::size_t> dims{2, 4, 4};
  const double h_bc = pure_marginal_entropy(out, dims, {false, true, true});
  const double h_c = pure_marginal_entropy(out, dims, {false, false, true});
  CHECK(std::abs(m.q_c_bound - h_bc) <= 1e-9);
  CHECK(std::abs(m.bc_distill - (h_c - h_bc)) <= 1e-9);
  CHECK(m.q_c_bound == Approx(1.0).margin(1e-9));
  CHECK(m.bc_distill == Approx(1.0).margin(1e-9));
  CHECK(m.feasible);
}

TEST_CASE("independent rates", "[region][merging]") {
  // A' = two qubits; the first goes to B, the second to C.
  const BroadcastChannel route(KrausChannel({Matrix::Identity(4, 4)}, SystemLayout{{kInputLabel, 4}},
                                            SystemLayout{{kBobLabel, 2}, {kCharlieLabel, 2}}));
  const auto two = tensor_product(epr(kRefBobLabel, "a1"), epr(kRefCharlieLabel, "a2"));
  // Reorder to A_B A_C a1 a2 and merge a1 a2 into A'.
  const Matrix perm = permutation_matrix(two.layout(), {kRefBobLabel, kRefCharlieLabel, "a1", "a2"});
  const PureState psi(perm * two.amplitudes(),
                      SystemLayout{{kRefBobLabel, 2}, {kRefCharlieLabel, 2}, {kInputLabel, 4}});
  const auto r = independent_rates(route, psi);
  CHECK(r.rate_b == Approx(1.0).margin(1e-9));
  CHECK(r.rate_c == Approx(1.0).margin(1e-9));
  CHECK(r.feasible_b);
  CHECK(r.feasible_c);

  const auto mixed = independent_rates(
      BroadcastChannel(constant_channel(SystemLayout{{kInputLabel, 4}},
                                        DensityMatrix::basis(SystemLayout{{kBobLabel, 2}, {kCharlieLabel, 2}}, 0))),
      psi);
  CHECK(mixed.rate_b == Approx(-1.0).margin(1e-9));
  CHECK(mixed.rate_c == Approx(-1.0).margin(1e-9));
  CHECK_FALSE(mixed.feasible_b);
  CHECK_FALSE(mixed.feasible_c);

  CHECK_THROWS_AS(independent_rates(route, epr("A", kInputLabel)), ValidationError);
}

TEST_CASE("two-letter region dominates one letter", "[region][cq]") {
  const auto w = make_noiseless_bit_cq();
  const auto cfg = small_config();
  const auto f1 = cq_broadcast_frontier(w, 1, cfg);
  const auto f2 = cq_broadcast_frontier(w, 2, cfg);
  check_witnesses(w, f2);
  for (int i = 0; i <= 8; ++i) {
    const double r = f1.max_common() * i / 8.0;
    CHECK(f2.value_at(std::min(r, f2.max_common())) >= f1.value_at(r) - 1e-3);
  }
}

TEST_CASE("matrix budget", "[region]") {
  auto cfg = small_config();
  cfg.matrix_budget = 4;
  CHECK_THROWS_AS(cq_broadcast_frontier(make_noiseless_bit_cq(), 1, cfg), BudgetError);
  CHECK_THROWS_AS(cq_entanglement_frontier(make_pinching(), 2, cfg), BudgetError);
  CHECK_THROWS_AS(cq_broadcast_frontier(make_noiseless_bit_cq(), 0, cfg), ValidationError);
}

TEST_CASE("frontiers on random cq channels", "[region][properties]") {
  Rng rng(kSeed + 11);
  auto cfg = small_config();
  cfg.grid = 5;
  cfg.restarts = 2;
  for (int s = 0; s < 4; ++s) {
    std::vector<DensityMatrix> states;
    for (int x = 0; x < 2; ++x)
      states.push_back(random_mixed(SystemLayout{{kBobLabel, 2}, {kCharlieLabel, 2}}, rng, 1 + s % 2));
    const CqBroadcastChannel w(states);
    cfg.seed = 100 + s;
    const auto f = cq_broadcast_frontier(w, 1, cfg);
    check_monotone(f);
    check_witnesses(w, f);
  }
}
