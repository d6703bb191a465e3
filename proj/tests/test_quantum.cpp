// Copyright 2026 The ctcdisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "ctcdisc/linalg.hpp"
#include "ctcdisc/markov.hpp"
#include "ctcdisc/quantum.hpp"
#include "test_support.hpp"

using namespace ctcdisc;
using namespace ctcdisc::testing;

TEST(Interaction, IsUnitaryAndRoutesTheInputByTheRegister) {
  Rng rng(41);
  const auto p = random_generic_problem(3, rng);
  const std::size_t n = 3;
  const InteractionUnitary v = build_interaction_unitary(p.unitaries());
  EXPECT_EQ(v.n_outcomes, n);
  EXPECT_LT(unitarity_defect(v.matrix), 1e-13);
  // V |x>_S |l>_C = |l>_S (U_l |x>)_C.
  const PureState x = haar_state(n, rng);
  for (std::size_t l = 0; l < n; ++l) {
    CVector in(n * n);
    for (std::size_t i = 0; i < n; ++i) in[i * n + l] = x[i];
    const CVector out = v.matrix * in;
    const CVector ux = p.unitaries()[l] * x.amplitudes();
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t c = 0; c < n; ++c)
        EXPECT_LT(std::abs(out[s * n + c] - (s == l ? ux[c] : cplx{})), 1e-13);
  }
}

TEST(Interaction, RejectsBadInput) {
  EXPECT_THROW(build_interaction_unitary(UnitarySet({CMatrix::identity(3), CMatrix::identity(3)})),
               DimensionError);
  EXPECT_THROW(build_interaction_unitary(UnitarySet({CMatrix{{2, 0}, {0, 1}}, CMatrix::identity(2)})),
               ValidationError);
}

TEST(Channel, MatchesSumFormOnRandomInputs) {
  Rng rng(42);
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto p = random_generic_problem(n, rng);
    const auto v = build_interaction_unitary(p.unitaries());
    for (int t = 0; t < 5; ++t) {
      const DensityMatrix rho = random_density(n, rng);
      const DensityMatrix sigma = random_density(n, rng);
      const DensityMatrix out = ctc_channel(v, rho, sigma);
      EXPECT_LT(max_abs_diff(out.matrix(), oracle_channel(p.unitaries(), rho.matrix(), sigma.matrix())),
                1e-13);
      EXPECT_NEAR(trace(out.matrix()).real(), 1.0, 1e-13);
      EXPECT_GE(hermitian_eigenvalues(out.matrix()).front(), -1e-13);
    }
  }
}

TEST(Channel, DependsOnlyOnTheDiagonalOfSigmaAndIsLinearInIt) {
  Rng rng(43);
  const auto p = random_generic_problem(3, rng);
  const auto v = build_interaction_unitary(p.unitaries());
  const DensityMatrix rho = random_density(3, rng);
  const DensityMatrix s1 = random_density(3, rng), s2 = random_density(3, rng);
  const DensityMatrix d1 = DensityMatrix::from_diagonal(s1.diagonal());
  EXPECT_LT(max_abs_diff(ctc_channel(v, rho, s1).matrix(), ctc_channel(v, rho, d1).matrix()), 1e-14);
  const double a = 0.3;
  const DensityMatrix mix(a * s1.matrix() + (1 - a) * s2.matrix());
  const CMatrix lhs = ctc_channel(v, rho, mix).matrix();
  const CMatrix rhs = a * ctc_channel(v, rho, s1).matrix() + (1 - a) * ctc_channel(v, rho, s2).matrix();
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-14);
}

TEST(Channel, TrueStateBasisProjectorIsAFixedPoint) {
  Rng rng(44);
  const auto p = random_generic_problem(4, rng);
  const auto v = build_interaction_unitary(p.unitaries());
  for (std::size_t a = 0; a < 4; ++a) {
    const DensityMatrix rho = DensityMatrix::from_pure(p.states()[a]);
    const DensityMatrix e = DensityMatrix::basis_projector(4, a);
    EXPECT_LT(trace_distance(ctc_channel(v, rho, e), e), 1e-13);
  }
}

TEST(TraceDistance, KnownValues) {
  const DensityMatrix z = DensityMatrix::basis_projector(2, 0);
  const DensityMatrix o = DensityMatrix::basis_projector(2, 1);
  const DensityMatrix plus = DensityMatrix::from_pure(PureState::normalized({1.0, 1.0}));
  EXPECT_NEAR(trace_distance(z, o), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(z, z), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(z, plus), std::sqrt(0.5), 1e-14);
  EXPECT_THROW(trace_distance(z, DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST(FixedPoint, ConvergesToTheTrueStateOnBB84) {
  const auto p = make_bb84_problem();
  const auto v = build_interaction_unitary(p.unitaries());
  for (std::size_t a = 0; a < 4; ++a) {
    const DensityMatrix rho = DensityMatrix::from_pure(p.states()[a]);
    std::size_t calls = 0;
    const auto r = iterate_to_fixed_point(v, rho, DensityMatrix::maximally_mixed(4), 10'000, 1e-12,
                                          [&](std::size_t, const DensityMatrix&, double) { ++calls; });
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_EQ(calls, r.iterations + 1);
    EXPECT_LT(trace_distance(r.state, DensityMatrix::basis_projector(4, a)), 1e-11);
  }
}

TEST(FixedPoint, ReportsNonConvergenceWithoutThrowing) {
  const auto p = make_bb84_problem();
  const auto v = build_interaction_unitary(p.unitaries());
  const auto r = iterate_to_fixed_point(v, DensityMatrix::from_pure(p.states()[2]),
                                        DensityMatrix::basis_projector(4, 0), 3, 1e-15);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_THROW(iterate_to_fixed_point(v, DensityMatrix::from_pure(p.states()[0]),
                                      DensityMatrix::maximally_mixed(4), 10, 0.0),
               std::invalid_argument);
}

TEST(FixedPoint, OrbitDiagonalIsTheMarkovDistribution) {
  Rng rng(45);
  const auto p = random_generic_problem(3, rng).with_omega(random_density(3, rng));
  const auto v = build_interaction_unitary(p.unitaries());
  for (std::size_t k = 0; k < 3; ++k) {
    const auto orbit = channel_orbit(v, DensityMatrix::from_pure(p.states()[k]), p.omega(), 12);
    ASSERT_EQ(orbit.size(), 13u);
    const RMatrix pk = oracle_transition(p, k);
    RVector u = p.initial_distribution();
    for (std::size_t t = 0; t <= 12; ++t) {
      const RVector d = orbit[t].diagonal();
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(d[i], u[i], 1e-12);
      u = pk * u;
    }
  }
}
