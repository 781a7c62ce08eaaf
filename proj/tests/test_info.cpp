#include <catch_amalgamated.hpp>

#include <numbers>

#include "channel_support.hpp"
#include "qbc/info/quantities.hpp"

using namespace qbc;
using namespace qbc::testing;
using Catch::Approx;

TEST_CASE("entropies of an EPR pair", "[info]") {
  const auto rho = epr().density();
  CHECK(entropy(rho, {"A"}) == Approx(1.0).margin(1e-12));
  CHECK(entropy(rho, {"A", "B"}) == Approx(0.0).margin(1e-12));
  CHECK(conditional_entropy(rho, {"A"}, {"B"}) == Approx(-1.0).margin(1e-12));
  CHECK(coherent_information(rho, {"A"}, {"B"}) == Approx(1.0).margin(1e-12));
  CHECK(mutual_information(rho, {"A"}, {"B"}) == Approx(2.0).margin(1e-12));
  CHECK(entropy(rho, {}) == 0.0);
}

TEST_CASE("label validation", "[info]") {
  const auto rho = epr().density();
  CHECK_THROWS_AS(entropy(rho, {"Z"}), LabelNotFound);
  CHECK_THROWS_AS(mutual_information(rho, {"A"}, {"A"}), ValidationError);
  CHECK_THROWS_AS(conditional_mutual_information(rho, {"A"}, {"B"}, {"B"}), ValidationError);
}

TEST_CASE("GHZ conditional mutual information", "[info]") {
  const auto rho = ghz().density();
  CHECK(conditional_mutual_information(rho, {"A"}, {"B"}, {"C"}) == Approx(1.0).margin(1e-12));
  CHECK(mutual_information(rho, {"A"}, {"B"}) == Approx(1.0).margin(1e-12));
  CHECK(mutual_information(rho, {"A"}, {"B", "C"}) == Approx(2.0).margin(1e-12));
}

TEST_CASE("channel coherent information", "[info]") {
  const SystemLayout l{{"A", 2}};
  const auto mixed = DensityMatrix::maximally_mixed(l);
  CHECK(channel_coherent_information(mixed, KrausChannel::identity(l)) == Approx(1.0).margin(1e-12));
  CHECK(channel_coherent_information(mixed, completely_dephasing_channel(l)) ==
        Approx(0.0).margin(1e-12));
  const auto zero = DensityMatrix::basis(SystemLayout{{"B", 2}}, 0);
  CHECK(channel_coherent_information(mixed, constant_channel(l, zero)) == Approx(-1.0).margin(1e-12));
  // Reference label collides with the output label.
  const SystemLayout r{{"R", 2}};
  CHECK(channel_coherent_information(DensityMatrix::maximally_mixed(r), KrausChannel::identity(r)) ==
        Approx(1.0).margin(1e-12));
  CHECK_THROWS_AS(channel_coherent_information(DensityMatrix::maximally_mixed(SystemLayout{{"A", 3}}),
                                               KrausChannel::identity(l)),
                  DimensionMismatch);
}

TEST_CASE("binary symmetric channel mutual information", "[info]") {
  const double f = 0.11;
  const SystemLayout xy{{"X", 2}, {"Y", 2}};
  const auto joint = DensityMatrix::diagonal(xy, {(1 - f) / 2, f / 2, f / 2, (1 - f) / 2});
  CHECK(mutual_information(joint, {"X"}, {"Y"}) == Approx(1.0 - h2(f)).margin(1e-12));
  CHECK(mutual_information(joint, {"X"}, {"Y"}) == Approx(0.5).margin(1e-3));
}

TEST_CASE("Holevo information", "[info]") {
  const auto zero = DensityMatrix::basis(SystemLayout{{"Q", 2}}, 0);
  const auto plus = plus_state("Q").density();
  const CqState cq({0.5, 0.5}, {zero, plus});
  const double c2 = std::pow(std::cos(std::numbers::pi / 8), 2);
  CHECK(holevo_information(cq) == Approx(h2(c2)).margin(1e-12));
  CHECK(holevo_information(cq) == Approx(0.6009).margin(1e-4));
  CHECK(std::abs(holevo_information(cq, {"Q"}) - holevo_information_embedded(cq, {"Q"})) <= 1e-10);
  CHECK(holevo_information(cq, {}) == 0.0);

  const CqState same({0.3, 0.7}, {plus, plus});
  CHECK(holevo_information(same) == Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(CqState({0.5, 0.4}, {zero, plus}), ValidationError);
}

TEST_CASE("embedding puts the classical register first", "[info]") {
  const auto zero = DensityMatrix::basis(SystemLayout{{"Q", 2}}, 0);
  const auto one = DensityMatrix::basis(SystemLayout{{"Q", 2}}, 1);
  const auto e = embed(CqState({0.25, 0.75}, {zero, one}));
  CHECK(e.layout().labels() == Labels{"X", "Q"});
  CHECK(e.matrix()(0, 0).real() == Approx(0.25));
  CHECK(e.matrix()(3, 3).real() == Approx(0.75));
}

TEST_CASE("information quantities on random states", "[info][properties]") {
  Rng rng(kSeed + 3);
  const SystemLayout l{{"A", 2}, {"B", 2}, {"C", 2}};
  for (int i = 0; i < 200; ++i) {
    const auto rho = random_mixed(l, rng);
    const double iab = mutual_information(rho, {"A"}, {"B"});
    CHECK(iab >= -1e-9);
    CHECK(iab <= 2.0 * 1.0 + 1e-9);
    CHECK(conditional_mutual_information(rho, {"A"}, {"B"}, {"C"}) >= -1e-9);
    // Chain rule I(A;BC) = I(A;C) + I(A;B|C).
    CHECK(mutual_information(rho, {"A"}, {"B", "C"}) ==
          Approx(mutual_information(rho, {"A"}, {"C"}) +
                 conditional_mutual_information(rho, {"A"}, {"B"}, {"C"}))
              .margin(1e-9));
    CHECK(conditional_entropy(rho, {"A"}, {"B"}) >= -1.0 - 1e-9);
  }
  for (int i = 0; i < 100; ++i) {
    std::vector<DensityMatrix> states;
    std::vector<double> w;
    for (int x = 0; x < 3; ++x) {
      states.push_back(random_mixed(SystemLayout{{"B", 2}, {"C", 2}}, rng, 1 + x % 2));
      w.push_back(1.0 / 3.0);
    }
    const CqState cq(w, states);
    const double chi = holevo_information(cq, {"B"});
    CHECK(chi >= -1e-9);
    CHECK(chi <= std::log2(3.0) + 1e-9);
    CHECK(chi <= 1.0 + 1e-9);
    CHECK(std::abs(chi - holevo_information_embedded(cq, {"B"})) <= 1e-10);
    CHECK(holevo_information(cq, {"B", "C"}) >= chi - 1e-9);
  }
}
