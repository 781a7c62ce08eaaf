#pragma once

#include "qbc/channel/broadcast.hpp"
#include "support.hpp"

namespace qbc::testing {

// Largest entry-wise deviation between two channels over a spanning input set.
inline double channel_distance(const KrausChannel& a, const KrausChannel& b) {
  double worst = 0.0;
  for (const auto& p : probe_states(a.input_dim()))
    worst = std::max(worst, max_abs(a.apply(p) - b.apply(p)));
  return worst;
}

inline DephasingSpec random_dephasing_spec(Rng& rng) {
  std::uniform_int_distribution<std::size_t> nx(2, 3), dc(1, 2), de(1, 2);
  const std::size_t x = nx(rng), c = dc(rng), e = de(rng);
  SystemLayout env{{kCharlieLabel, c}};
  if (e > 1) env = env.concat(SystemLayout{{kEnvLabel, e}});
  std::vector<PureState> vecs;
  for (std::size_t i = 0; i < x; ++i) vecs.push_back(random_pure(env, rng));
  return DephasingSpec(std::move(vecs));
}

// The dephasing isometry read as a channel A' -> B whose environment is
// everything else (C and E); its complementary is rho -> sum_x <x|rho|x> psi_x.
inline KrausChannel dephasing_to_bob(const BroadcastChannel& u) {
  const auto& ops = u.channel().ops();
  const auto nb = u.bob_dim(), nc = u.charlie_dim();
  std::vector<Matrix> out;
  for (const auto& k : ops)
    for (std::size_t c = 0; c < nc; ++c) {
      Matrix m(nb, k.cols());
      for (std::size_t b = 0; b < nb; ++b) m.row(b) = k.row(b * nc + c);
      out.push_back(m);
    }
  return KrausChannel(out, u.channel().input(), SystemLayout{{kBobLabel, nb}});
}

}  // namespace qbc::testing
