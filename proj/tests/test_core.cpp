#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace qbc;
using namespace qbc::testing;
using Catch::Approx;

TEST_CASE("layout validation", "[core]") {
  CHECK_THROWS_AS(SystemLayout({{"A", 2}, {"A", 3}}), ValidationError);
  CHECK_THROWS_AS(SystemLayout({{"A", 0}}), ValidationError);
  const SystemLayout l{{"A", 2}, {"B", 3}};
  CHECK(l.total_dim() == 6);
  CHECK_THROWS_AS(l.index_of("Z"), LabelNotFound);
  CHECK(l.select({"B", "A"}).labels() == Labels{"A", "B"});
}

TEST_CASE("state invariants", "[core]") {
  const SystemLayout l{{"A", 2}};
  Matrix m = Matrix::Identity(2, 2) * 0.45;
  CHECK_THROWS_WITH(DensityMatrix(m, l), Catch::Matchers::ContainsSubstring("trace"));
  Matrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS_WITH(DensityMatrix(neg, l), Catch::Matchers::ContainsSubstring("negative eigenvalue"));
  Matrix nh(2, 2);
  nh << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_WITH(DensityMatrix(nh, l), Catch::Matchers::ContainsSubstring("Hermitian"));
  CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(3, 3) / 3.0, l), DimensionMismatch);
  Vector v(2);
  v << 1.0, 0.1;
  CHECK_THROWS_WITH(PureState(v, l), Catch::Matchers::ContainsSubstring("norm"));
  CHECK_THROWS_AS(CqState({0.5, 0.4}, {DensityMatrix::basis(l, 0), DensityMatrix::basis(l, 1)}),
                  ValidationError);
}

TEST_CASE("tensor product", "[core]") {
  const auto a = DensityMatrix::basis(SystemLayout{{"A", 2}}, 0);
  const auto b = DensityMatrix::basis(SystemLayout{{"B", 2}}, 1);
  const auto ab = tensor_product(a, b);
  CHECK(ab.layout().labels() == Labels{"A", "B"});
  CHECK(ab.matrix()(1, 1).real() == Approx(1.0));

  const auto mm = tensor_product(DensityMatrix::maximally_mixed(SystemLayout{{"A", 2}}),
                                 DensityMatrix::maximally_mixed(SystemLayout{{"B", 2}}));
  CHECK(max_abs(mm.matrix() - Matrix::Identity(4, 4) / 4.0) < 1e-15);

  const std::vector<double> p{0.3, 0.7}, q{0.6, 0.4};
  const auto pq = tensor_product(diag_state("A", p), diag_state("B", q));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(pq.matrix()(i * 2 + j, i * 2 + j).real() == Approx(p[i] * q[j]).margin(1e-15));
}

TEST_CASE("partial trace", "[core]") {
  const auto e = epr().density();
  CHECK(max_abs(partial_trace(e, {"A"}).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);

  Rng rng(kSeed);
  const auto ra = random_mixed(SystemLayout{{"A", 2}}, rng);
  const auto rb = random_mixed(SystemLayout{{"B", 3}}, rng);
  CHECK(max_abs(partial_trace(tensor_product(ra, rb), {"A"}).matrix() - ra.matrix()) < 1e-14);
  CHECK(max_abs(partial_trace(tensor_product(ra, rb), {"B"}).matrix() - rb.matrix()) < 1e-14);

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(6);
  double s = 0;
  for (auto& x : w) s += (x = u(rng));
  for (auto& x : w) x /= s;
  const auto joint = DensityMatrix::diagonal(SystemLayout{{"A", 2}, {"B", 3}}, w);
  const auto mb = partial_trace(joint, {"B"});
  for (std::size_t b = 0; b < 3; ++b) {
    double acc = 0;
    for (std::size_t a = 0; a < 2; ++a) acc += w[a * 3 + b];
    CHECK(mb.matrix()(b, b).real() == Approx(acc).margin(1e-15));
  }
  CHECK(partial_trace(joint, {"A"}).matrix().trace().real() == Approx(1.0).margin(1e-12));
  CHECK_THROWS_AS(partial_trace(joint, {"Q"}), LabelNotFound);
}

TEST_CASE("reorder permutes subsystems", "[core]") {
  Rng rng(kSeed + 3);
  const auto a = random_mixed(SystemLayout{{"A", 2}}, rng);
  const auto b = random_mixed(SystemLayout{{"B", 3}}, rng);
  const auto ba = reorder(tensor_product(a, b), {"B", "A"});
  CHECK(max_abs(ba.matrix() - tensor_product(b, a).matrix()) < 1e-14);
}

TEST_CASE("purification", "[core]") {
  const auto mixed = DensityMatrix::maximally_mixed(SystemLayout{{"A", 2}});
  const auto phi = purify(mixed);
  CHECK(phi.layout().labels() == Labels{"R", "A"});
  CHECK(von_neumann_entropy(partial_trace(phi.density(), {"R"})) == Approx(1.0).margin(1e-12));

  const auto pure = purify(DensityMatrix::basis(SystemLayout{{"A", 2}}, 0));
  CHECK(von_neumann_entropy(partial_trace(pure.density(), {"A"})) == Approx(0.0).margin(1e-12));

  const auto rho = diag_state("A", {0.7, 0.3});
  const auto psi = purify(rho);
  Matrix coeffs(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int a = 0; a < 2; ++a) coeffs(r, a) = psi.amplitudes()(r * 2 + a);
  Eigen::JacobiSVD<Matrix> svd(coeffs);
  CHECK(svd.singularValues()(0) == Approx(std::sqrt(0.7)).margin(1e-12));
  CHECK(svd.singularValues()(1) == Approx(std::sqrt(0.3)).margin(1e-12));
  CHECK(trace_distance(partial_trace(psi.density(), {"A"}), rho) <= 1e-8);
}

TEST_CASE("trace distance", "[core]") {
  Rng rng(kSeed);
  const auto r = random_mixed(SystemLayout{{"A", 3}}, rng);
  CHECK(trace_distance(r, r) == Approx(0.0).margin(1e-14));
  const SystemLayout l{{"A", 2}};
  CHECK(trace_distance(DensityMatrix::basis(l, 0), DensityMatrix::basis(l, 1)) == Approx(2.0));
  const auto a = diag_state("A", {0.8, 0.2}), b = diag_state("A", {0.5, 0.5});
  CHECK(trace_distance(a, b) == Approx(std::abs(0.8 - 0.5) + std::abs(0.2 - 0.5)));
  CHECK_THROWS_AS(trace_distance(a, random_mixed(SystemLayout{{"A", 3}}, rng)), DimensionMismatch);
}

TEST_CASE("fidelity", "[core]") {
  Rng rng(kSeed);
  const auto phi = random_pure(SystemLayout{{"A", 3}}, rng);
  CHECK(fidelity(phi.density(), phi.density()) == Approx(1.0).margin(1e-9));
  const SystemLayout l{{"A", 2}};
  CHECK(fidelity(DensityMatrix::basis(l, 0), DensityMatrix::maximally_mixed(l)) == Approx(0.5));
  const auto a = diag_state("A", {0.8, 0.2}), b = diag_state("A", {0.5, 0.5});
  const double classical = std::pow(std::sqrt(0.8 * 0.5) + std::sqrt(0.2 * 0.5), 2);
  CHECK(fidelity(a, b) == Approx(classical).margin(1e-12));
  for (int i = 0; i < 50; ++i) {
    const auto x = random_mixed(SystemLayout{{"A", 3}}, rng), y = random_mixed(SystemLayout{{"A", 3}}, rng);
    CHECK(std::abs(fidelity(x, y) - fidelity(y, x)) <= 1e-9);
    const auto p = random_pure(SystemLayout{{"A", 3}}, rng);
    const double overlap = (p.amplitudes().adjoint() * x.matrix() * p.amplitudes())(0, 0).real();
    CHECK(fidelity(p, x) == Approx(overlap).margin(1e-12));
    CHECK(fidelity(p.density(), x) == Approx(overlap).margin(1e-7));
  }
}

TEST_CASE("von Neumann entropy", "[core]") {
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(SystemLayout{{"A", 2}})) == Approx(1.0));
  Rng rng(kSeed);
  CHECK(von_neumann_entropy(random_pure(SystemLayout{{"A", 4}}, rng).density()) ==
        Approx(0.0).margin(1e-9));
  CHECK(von_neumann_entropy(diag_state("A", {0.5, 0.25, 0.25})) == Approx(1.5));
  for (int i = 0; i < 50; ++i) {
    const auto r = random_mixed(SystemLayout{{"A", 4}}, rng);
    const double h = von_neumann_entropy(r);
    CHECK(h >= -1e-12);
    CHECK(h <= 2.0 + 1e-12);
  }
}
