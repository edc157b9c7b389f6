// Copyright 2026 The qtesd Authors
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

#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "qtesd/dynamics.hpp"
#include "qtesd/eigen.hpp"
#include "qtesd/random.hpp"

using namespace qtesd;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Matrix6 oracle_generator(const Matrix6& rho, const DecayRates& r) {
  return oracle::generator(rho, r.gamma, r.gamma1, r.gamma2);
}

double trajectory_error(const Trajectory& traj, const std::function<DensityMatrix(double)>& analytic) {
  double err = 0.0;
  for (std::size_t n = 0; n < traj.times.size(); ++n)
    err = std::max(err, max_abs_diff(traj.states[n].matrix(), analytic(traj.times[n]).matrix()));
  return err;
}

}  // namespace

TEST_CASE("decay rates") {
  CHECK_THROWS_AS((DecayRates{-1.0, 1.0, 1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((DecayRates{1.0, INFINITY, 1.0}.validate()), std::domain_error);
  CHECK(interference_k({1.0, 1.0, 1.0}) == 1.0);
  CHECK(interference_k({1.0, 0.0, 1.0}) == 0.0);
  CHECK(interference_k({1.0, 0.25, 0.5}) == 0.5);
  CHECK_THROWS_AS(interference_k({1.0, 1.0, 0.0}), std::domain_error);
  CHECK(rates_with_interference(2.0, 0.5, 0.4) == DecayRates{2.0, 0.2, 0.5});
  CHECK_THROWS_AS(rates_with_interference(1.0, 1.0, -0.1), std::domain_error);
  CHECK((DecayRates{0.3, 2.0, 1.0}.max_rate()) == 2.0);
  CHECK((DecayRates{0.3, 2.0, 1.0}.min_rate()) == 0.3);
}

TEST_CASE("mixed family parameters") {
  const auto p = MixedFamilyParams::from_bc(0.02, 0.2);
  CHECK(p.a == doctest::Approx(0.37));
  CHECK(2 * p.a + 3 * p.b + p.c == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(MixedFamilyParams::from_bc(0.2, 0.5), doctest::Contains("c = 0.5"), std::domain_error);
  CHECK_THROWS_AS((MixedFamilyParams{0.5, 0.0, 0.5}.validate()), std::domain_error);
  CHECK_NOTHROW((MixedFamilyParams{0.25, 0.0, 0.5}.validate()));
}

TEST_CASE("state families") {
  CHECK(std::string(family_name(FamilyTag::Phi2Prime)) == "phi2prime");
  CHECK_THROWS_AS(StateFamily::pure(FamilyTag::Phi1, 0.6, 0.7), std::domain_error);
  CHECK_THROWS_AS(StateFamily::pure(FamilyTag::MixedAC, 0.6, 0.8), std::domain_error);

  const struct {
    FamilyTag tag;
    int i1, j1, i2, j2;
    double sign;
  } cases[] = {{FamilyTag::Phi1, 0, 0, 1, 1, 1},      {FamilyTag::Phi2Plus, 0, 1, 1, 2, 1},
               {FamilyTag::Phi2Minus, 0, 1, 1, 2, -1}, {FamilyTag::Phi2Prime, 0, 2, 1, 1, 1},
               {FamilyTag::Phi3Plus, 0, 2, 1, 0, 1},  {FamilyTag::Phi3Minus, 0, 2, 1, 0, -1}};
  for (const auto& c : cases) {
    const auto fam = StateFamily::pure(c.tag, 0.6, 0.8);
    std::array<Complex, 6> a{};
    a[static_cast<std::size_t>(3 * c.i1 + c.j1)] = 0.6;
    a[static_cast<std::size_t>(3 * c.i2 + c.j2)] = c.sign * 0.8;
    CHECK(max_abs_diff(fam.initial_state().matrix(), oracle::projector(a)) < 1e-15);
    CHECK(negativity(fam.initial_state()) == doctest::Approx(0.96));
    CHECK_THROWS_AS(fam.mixed_params(), std::logic_error);
  }

  const auto p = MixedFamilyParams::from_bc(0.06, 0.3);
  CHECK(max_abs_diff(StateFamily::mixed(p).initial_state().matrix(), oracle::mixed_initial(p.a, p.b, p.c)) < 1e-15);
  CHECK_THROWS_AS(StateFamily::mixed(p).pure_params(), std::logic_error);
  CHECK(StateFamily::custom(DensityMatrix::maximally_mixed()).tag() == FamilyTag::Custom);
}

TEST_CASE("dissipator") {
  const DecayRates rates{0.7, 1.3, 0.4};
  SUBCASE("ground state is stationary") {
    const auto g = oracle::projector({1.0, 0, 0, 0, 0, 0});
    CHECK(max_abs(dissipator(g, rates)) == 0.0);
  }
  SUBCASE("|1,1> population decays at gamma + gamma1") {
    const auto e = oracle::projector({0, 0, 0, 0, 1.0, 0});
    const auto d = dissipator(e, rates);
    CHECK(oracle::el(d, 2, 2).real() == doctest::Approx(-(rates.gamma + rates.gamma1)));
    CHECK(max_abs_diff(d, oracle_generator(e, rates)) < 1e-15);
  }
  SUBCASE("random inputs agree with the operator form and are traceless") {
    testgen::Rng rng(41);
    for (int n = 0; n < 100; ++n) {
      const auto r = testgen::rates(rng, 0.0, 3.0);
      const auto rho = random_density_matrix(rng).matrix();
      const auto d = dissipator(rho, r);
      CHECK(max_abs_diff(d, oracle_generator(rho, r)) < 1e-14);
      CHECK(std::abs(d.trace()) < 1e-12);
      CHECK(hermiticity_defect(d) < 1e-15);
    }
  }
  SUBCASE("linear") {
    testgen::Rng rng(43);
    for (int n = 0; n < 50; ++n) {
      const auto r = testgen::rates(rng);
      const auto x = random_density_matrix(rng).matrix();
      const auto y = random_density_matrix(rng).matrix();
      const double a = testgen::uniform(rng, -2, 2), b = testgen::uniform(rng, -2, 2);
      const auto lhs = dissipator(x * Complex(a) + y * Complex(b), r);
      const auto rhs = dissipator(x, r) * Complex(a) + dissipator(y, r) * Complex(b);
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("numeric integration") {
  SUBCASE("zero duration returns the initial state") {
    const auto rho = StateFamily::pure(FamilyTag::Phi1, 0.6, 0.8).initial_state();
    const auto traj = evolve_numeric(rho, {1, 1, 1}, 0.0);
    REQUIRE(traj.times.size() == 1);
    CHECK(traj.times[0] == 0.0);
    CHECK(traj.states[0].matrix() == rho.matrix());
  }
  SUBCASE("stride keeps the endpoints") {
    const auto rho = DensityMatrix::maximally_mixed();
    const auto traj = evolve_numeric(rho, {1, 1, 1}, 1.0, 1e-2, 30);
    REQUIRE(traj.times.size() == 5);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0));
    CHECK(traj.times[1] == doctest::Approx(0.3));
    for (std::size_t n = 1; n < traj.times.size(); ++n) CHECK(traj.times[n] > traj.times[n - 1]);
  }
  SUBCASE("invalid arguments") {
    const auto rho = DensityMatrix::maximally_mixed();
    CHECK_THROWS_AS(evolve_numeric(rho, {1, 1, 1}, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(evolve_numeric(rho, {1, 1, 1}, -1.0), std::domain_error);
    CHECK_THROWS_AS(evolve_numeric(rho, {1, 1, 1}, 1.0, 1e-3, 0), std::domain_error);
    CHECK_THROWS_AS(rk4_advance(rho.matrix(), {1, 1, 1}, 1.0, -1.0), std::domain_error);
  }
  SUBCASE("maximally entangled phi1 decays as exp(-2t)") {
    const auto fam = StateFamily::pure(FamilyTag::Phi1, kInvSqrt2, kInvSqrt2);
    const auto traj = evolve_numeric(fam.initial_state(), {1, 1, 0}, 5.0, 1e-3, 10);
    for (std::size_t n = 0; n < traj.times.size(); ++n)
      CHECK(std::abs(traj.negativities[n] - std::exp(-2.0 * traj.times[n])) < 1e-6);
  }
  SUBCASE("RK4 step matches the exact propagator over a short interval") {
    // Fourth-order accuracy: halving the step cuts the error by about 16.
    const DecayRates r{1.0, 0.6, 0.3};
    const auto rho = oracle::phi1_state(0.6, 0.8, 1.0, 0.6, 0.0);
    const auto exact = oracle::phi1_state(0.6, 0.8, 1.0, 0.6, 1.0);
    const double e1 = oracle::max_diff(rk4_advance(rho, r, 1.0, 0.2), exact);
    const double e2 = oracle::max_diff(rk4_advance(rho, r, 1.0, 0.1), exact);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
  }
}

TEST_CASE("phi1 analytic solution") {
  const DecayRates r{1.0, 1.0, 0.5};
  const auto s0 = evolve_phi1_analytic(0.6, 0.8, r, 0.0);
  CHECK(oracle::el(s0.matrix(), 2, 2).real() == doctest::Approx(0.64));
  CHECK(oracle::el(s0.matrix(), 2, 6).real() == doctest::Approx(0.48));
  CHECK(oracle::el(s0.matrix(), 6, 6).real() == doctest::Approx(0.36));
  CHECK(oracle::el(evolve_phi1_analytic(0.6, 0.8, r, 60.0).matrix(), 6, 6).real() == doctest::Approx(1.0));

  testgen::Rng rng(47);
  for (int n = 0; n < 50; ++n) {
    const auto [alpha, beta] = testgen::amplitudes(rng);
    const auto rr = testgen::rates(rng);
    const double t = testgen::uniform(rng, 0.0, 4.0);
    const auto m = evolve_phi1_analytic(alpha, beta, rr, t).matrix();
    CHECK(oracle::max_diff(m, oracle::phi1_state(alpha, beta, rr.gamma, rr.gamma1, t)) < 1e-14);
    const auto deriv = oracle::central_difference(
        [&](double s) { return oracle::phi1_state(alpha, beta, rr.gamma, rr.gamma1, s); }, t + 1e-3, 1e-4);
    CHECK(oracle::max_diff(deriv, oracle_generator(evolve_phi1_analytic(alpha, beta, rr, t + 1e-3).matrix(), rr)) <
          1e-6);
  }

  const auto fam = StateFamily::pure(FamilyTag::Phi1, 0.6, 0.8);
  const auto traj = evolve_numeric(fam.initial_state(), r, 0.7, 1e-3, 700);
  CHECK(max_abs_diff(traj.states.back().matrix(), evolve_phi1_analytic(0.6, 0.8, r, 0.7).matrix()) < 1e-8);
}

TEST_CASE("phi2 analytic solution") {
  const DecayRates r{1.0, 0.5, 1.0};
  const auto s0 = evolve_phi2_analytic(0.6, 0.8, r, 0.0);
  CHECK(oracle::el(s0.matrix(), 1, 1).real() == doctest::Approx(0.64));
  CHECK(oracle::el(s0.matrix(), 1, 5).real() == doctest::Approx(0.48));
  CHECK(oracle::el(s0.matrix(), 5, 5).real() == doctest::Approx(0.36));

  SUBCASE("no |0,1> decay strands population") {
    const DecayRates k0{1.0, 0.0, 1.0};
    const auto late = evolve_phi2_analytic(0.6, 0.8, k0, 60.0).matrix();
    CHECK(oracle::el(late, 5, 5).real() == doctest::Approx(0.36));
    CHECK(oracle::el(late, 6, 6).real() < 1.0);
    const auto traj = evolve_numeric(StateFamily::pure(FamilyTag::Phi2Plus, 0.6, 0.8).initial_state(), k0, 20.0, 1e-3,
                                     20000);
    CHECK(max_abs_diff(traj.states.back().matrix(), evolve_phi2_analytic(0.6, 0.8, k0, 20.0).matrix()) < 1e-8);
  }

  testgen::Rng rng(53);
  for (int n = 0; n < 50; ++n) {
    const auto [alpha, beta] = testgen::amplitudes(rng);
    const auto rr = testgen::rates(rng);
    const double t = testgen::uniform(rng, 0.0, 4.0);
    const double sign = n % 2 ? 1.0 : -1.0;
    const auto m = evolve_phi2_analytic(alpha, sign * beta, rr, t).matrix();
    CHECK(oracle::max_diff(m, oracle::phi2_state(alpha, sign * beta, rr.gamma, rr.gamma1, rr.gamma2, t)) < 1e-14);
    const auto deriv = oracle::central_difference(
        [&](double s) { return oracle::phi2_state(alpha, beta, rr.gamma, rr.gamma1, rr.gamma2, s); }, t + 1e-3, 1e-4);
    CHECK(oracle::max_diff(deriv, oracle_generator(evolve_phi2_analytic(alpha, beta, rr, t + 1e-3).matrix(), rr)) <
          1e-6);
  }

  const DecayRates k1{1.0, 1.0, 1.0};
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    CHECK(negativity(evolve_phi2_analytic(kInvSqrt2, kInvSqrt2, k1, t)) ==
          doctest::Approx(oracle::phi2_negativity(kInvSqrt2, kInvSqrt2, 1, 1, 1, t)).scale(1.0).epsilon(1e-8));
  }
}

TEST_CASE("mixed-family analytic solution") {
  const auto p = MixedFamilyParams::from_bc(0.02, 0.2);
  const DecayRates r{1.0, 0.8, 1.2};
  const auto s0 = evolve_mixed_analytic(p, r, 0.0).matrix();
  CHECK(oracle::el(s0, 1, 1).real() == doctest::Approx(p.a));
  CHECK(oracle::el(s0, 2, 2).real() == doctest::Approx(p.b));
  CHECK(oracle::el(s0, 3, 3).real() == doctest::Approx((p.b + p.c) / 2));
  CHECK(oracle::el(s0, 5, 5).real() == doctest::Approx((p.b + p.c) / 2));
  CHECK(oracle::el(s0, 3, 5).real() == doctest::Approx((p.b - p.c) / 2));
  CHECK(oracle::el(s0, 4, 4).real() == doctest::Approx(p.a));
  CHECK(oracle::el(s0, 6, 6).real() == doctest::Approx(p.b));
  CHECK(oracle::max_diff(s0, oracle::mixed_initial(p.a, p.b, p.c)) < 1e-15);

  SUBCASE("equal b and c carries no coherence") {
    const auto q = MixedFamilyParams::from_bc(0.1, 0.1);
    for (double t : {0.0, 0.5, 3.0}) CHECK(oracle::el(evolve_mixed_analytic(q, r, t).matrix(), 3, 5) == Complex{});
  }

  SUBCASE("every element, including the printed ground population") {
    testgen::Rng rng(59);
    for (int n = 0; n < 50; ++n) {
      const auto q = testgen::mixed(rng);
      const auto rr = testgen::rates(rng);
      const double t = testgen::uniform(rng, 0.0, 4.0);
      CHECK(oracle::max_diff(evolve_mixed_analytic(q, rr, t).matrix(),
                             oracle::mixed_state(q.a, q.b, q.c, rr.gamma, rr.gamma1, rr.gamma2, t)) < 1e-13);
      const auto deriv = oracle::central_difference(
          [&](double s) { return oracle::mixed_state(q.a, q.b, q.c, rr.gamma, rr.gamma1, rr.gamma2, s); }, t + 1e-3,
          1e-4);
      CHECK(oracle::max_diff(deriv, oracle_generator(evolve_mixed_analytic(q, rr, t + 1e-3).matrix(), rr)) < 1e-6);
    }
  }

  SUBCASE("agrees with integration") {
    const auto traj = evolve_numeric(StateFamily::mixed(p).initial_state(), r, 3.0, 1e-3, 100);
    CHECK(trajectory_error(traj, [&](double t) { return evolve_mixed_analytic(p, r, t); }) < 1e-8);
    const auto q = MixedFamilyParams::from_bc(0.06, 0.3);
    const DecayRates ones{1, 1, 1};
    const auto t1 = evolve_numeric(StateFamily::mixed(q).initial_state(), ones, 1.0, 1e-3, 1000);
    CHECK(max_abs_diff(t1.states.back().matrix(), evolve_mixed_analytic(q, ones, 1.0).matrix()) < 1e-8);
  }
}

TEST_CASE("closed-form negativities") {
  const DecayRates ones{1, 1, 1};
  CHECK(negativity_phi1_closed(0.8, ones, 0.0) == doctest::Approx(0.96).epsilon(1e-14));
  CHECK(negativity_phi1_closed(kInvSqrt2, ones, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(negativity_phi1_closed(0.8, ones, 2.0) == 0.0);
  CHECK(negativity_phi2_closed(kInvSqrt2, kInvSqrt2, ones, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double t : {0.0, 1.0, 10.0}) {
    CHECK(negativity_phi2_closed(1.0, 0.0, ones, t) == 0.0);
    CHECK(negativity_phi2_closed(0.0, 1.0, ones, t) == 0.0);
  }

  SUBCASE("phi2 at maximal interference against integration") {
    const DecayRates k0{1.0, 0.0, 1.0};
    const auto fam = StateFamily::pure(FamilyTag::Phi2Plus, kInvSqrt2, kInvSqrt2);
    const auto traj = evolve_numeric(fam.initial_state(), k0, 1.0, 1e-3, 1000);
    const double closed = negativity_phi2_closed(kInvSqrt2, kInvSqrt2, k0, 1.0);
    CHECK(closed == doctest::Approx(oracle::phi2_negativity(kInvSqrt2, kInvSqrt2, 1, 0, 1, 1.0)).epsilon(1e-13));
    CHECK(std::abs(traj.negativities.back() - closed) < 1e-6);
  }

  SUBCASE("against the printed formulas and the analytic states") {
    testgen::Rng rng(61);
    for (int n = 0; n < 100; ++n) {
      const auto [alpha, beta] = testgen::amplitudes(rng);
      const auto rr = testgen::rates(rng);
      const double t = testgen::uniform(rng, 0.0, 3.0);
      CHECK(negativity_phi1_closed(beta, rr, t) ==
            doctest::Approx(oracle::phi1_negativity(beta, rr.gamma, rr.gamma1, t)).scale(1.0).epsilon(1e-10));
      CHECK(negativity_phi2_closed(alpha, beta, rr, t) ==
            doctest::Approx(oracle::phi2_negativity(alpha, beta, rr.gamma, rr.gamma1, rr.gamma2, t))
                .scale(1.0)
                .epsilon(1e-10));
      CHECK(negativity_phi1_closed(beta, rr, t) ==
            doctest::Approx(negativity(evolve_phi1_analytic(alpha, beta, rr, t))).scale(1.0).epsilon(1e-8));
      CHECK(negativity_phi2_closed(alpha, beta, rr, t) ==
            doctest::Approx(negativity(evolve_phi2_analytic(alpha, beta, rr, t))).scale(1.0).epsilon(1e-8));
      CHECK(negativity_phi2_closed(alpha, beta, rr, t) ==
            doctest::Approx(negativity(evolve_phi2_analytic(alpha, -beta, rr, t))).scale(1.0).epsilon(1e-8));
    }
  }

  SUBCASE("signed phi1 value crosses zero at the death time") {
    const double t_star = std::log(4.0);
    CHECK(phi1_signed_negativity(0.8, ones, t_star - 1e-6) > 0.0);
    CHECK(phi1_signed_negativity(0.8, ones, t_star + 1e-6) < 0.0);
  }

  SUBCASE("maximal entanglement decays monotonically") {
    double prev = 2.0;
    for (double t = 0.0; t <= 10.0; t += 0.05) {
      const double v = negativity_phi1_closed(kInvSqrt2, {1.0, 0.5, 0.0}, t);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("phi2-prime evolves like phi2 with the qutrit rates exchanged") {
  const DecayRates r{1.0, 0.3, 0.9};
  const DecayRates swapped{1.0, 0.9, 0.3};
  const auto traj = evolve_numeric(StateFamily::pure(FamilyTag::Phi2Prime, 0.6, 0.8).initial_state(), r, 4.0, 1e-3, 100);
  for (std::size_t n = 0; n < traj.times.size(); ++n)
    CHECK(std::abs(traj.negativities[n] - negativity_phi2_closed(0.6, 0.8, swapped, traj.times[n])) < 1e-6);
}

TEST_CASE("asymptotic state is the ground projector") {
  const auto g = asymptotic_state().matrix();
  CHECK(oracle::el(g, 6, 6) == Complex(1.0));
  CHECK(max_abs_diff(g, oracle::projector({1.0, 0, 0, 0, 0, 0})) == 0.0);
}
