#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "multiaxial/errors.hpp"
#include "multiaxial/special_fn.hpp"
#include "support/oracle.hpp"

using namespace multiaxial;
using doctest::Approx;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

}  // namespace

TEST_CASE("half integers parse, print and compare exactly") {
  CHECK(HalfInteger::parse("3/2").twice() == 3);
  CHECK(HalfInteger::parse("-1/2").twice() == -1);
  CHECK(HalfInteger::parse("2").twice() == 4);
  CHECK(HalfInteger::parse("1.5").twice() == 3);
  CHECK(h(3).str() == "3/2");
  CHECK(h(-1).str() == "-1/2");
  CHECK(HalfInteger(2).str() == "2");
  CHECK(h(1) + h(1) == HalfInteger(1));
  CHECK(h(3) - h(5) == h(-2));
  CHECK(h(1) < h(3));
  CHECK_THROWS_AS(HalfInteger::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInteger::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInteger::from_double(0.3), std::invalid_argument);
  CHECK_THROWS_AS(h(3).as_int(), std::domain_error);
  CHECK_THROWS_AS(require_spin(HalfInteger(21)), std::domain_error);
  CHECK_THROWS_AS(require_spin(h(-1)), std::domain_error);
}

TEST_CASE("Clebsch-Gordan reference values") {
  CHECK(clebsch_gordan(HalfInteger(1), 0, HalfInteger(1), 0, HalfInteger(2), 0) == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  // Stretched spin-3/2 entries fixed by the GHZ-3 rank-2 diagonal.
  CHECK(std::sqrt(5.0) * clebsch_gordan(CGArgs(h(3), 2, h(3), h(3), 0, h(3))) == Approx(1.0).epsilon(1e-14));
  CHECK(clebsch_gordan(CGArgs(h(3), 3, h(3), h(3), 0, h(3))) == Approx(1.0 / std::sqrt(35.0)).epsilon(1e-14));
  // 1 + (-2) = -1 obeys the selection rule, so this one is not zero.
  CHECK(clebsch_gordan(CGArgs(1, 2, 1, 1, -2, -1)) == Approx(std::sqrt(0.6)).epsilon(1e-14));
  CHECK(clebsch_gordan(CGArgs(1, 2, 1, 1, -2, 0)) == 0.0);
  CHECK(clebsch_gordan(CGArgs(1, 2, 1, 1, 0, 0)) == 0.0);
  // Triangle violation.
  CHECK(clebsch_gordan(CGArgs(1, 3, 1, 0, 0, 0)) == 0.0);
  // Odd-parity zero of C(1 1 1; 0 0 0).
  CHECK(std::abs(clebsch_gordan(CGArgs(1, 1, 1, 0, 0, 0))) < 1e-15);
  CHECK_THROWS_AS(CGArgs(h(-1), 0, 0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("Clebsch-Gordan agrees with explicit state construction") {
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2) {
      const oracle::LadderCG ladder(h(tj1), h(tj2));
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            const int tM = tm1 + tm2;
            if (std::abs(tM) > tJ) continue;
            const double got = clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tM));
            const double want = ladder(h(tm1), h(tm2), h(tJ), h(tM));
            INFO("j1=", tj1, "/2 j2=", tj2, "/2 J=", tJ, "/2 m1=", tm1, " m2=", tm2);
            CHECK(got == Approx(want).epsilon(1e-12).scale(1.0));
          }
    }
}

TEST_CASE("Clebsch-Gordan orthogonality for j <= 3") {
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2)
      for (int tM = -(tj1 + tj2); tM <= tj1 + tj2; tM += 2)
        for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
          for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2) {
            if (std::abs(tM) > std::min(tJ, tJp)) continue;
            double sum = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              const int tm2 = tM - tm1;
              if (std::abs(tm2) > tj2) continue;
              sum += clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tM)) *
                     clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJp), h(tM));
            }
            CHECK(sum == Approx(tJ == tJp ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
          }
}

TEST_CASE("stretched closed form") {
  CHECK(cg_stretched(h(3), 2) == Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(cg_stretched(h(3), 3) == Approx(1.0 / std::sqrt(35.0)).epsilon(1e-14));
  CHECK(cg_stretched(2, 4) == Approx(std::sqrt(14.0) / 42.0).epsilon(1e-14));
  CHECK(cg_stretched(h(5), 6) == 0.0);
  for (int tc = 0; tc <= 16; ++tc) {
    CHECK(cg_stretched(h(tc), 0) == Approx(1.0).epsilon(1e-14));
    for (int b = 0; b <= tc; ++b) {
      const double direct = clebsch_gordan(h(tc), h(tc), HalfInteger(b), 0, h(tc), h(tc));
      CHECK(cg_stretched(h(tc), b) == Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("Wigner D matrix") {
  std::mt19937_64 rng(11);
  SUBCASE("identity rotation") {
    for (int tj = 0; tj <= 8; ++tj) {
      const ComplexMatrix d = wigner_d_matrix(h(tj), {});
      CHECK((d - ComplexMatrix::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SUBCASE("unitary for random angles up to k = 4") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = oracle::random_angles(rng);
      for (int tk = 0; tk <= 8; ++tk) {
        const ComplexMatrix d = wigner_d_matrix(h(tk), g);
        CHECK((d * d.adjoint() - ComplexMatrix::Identity(tk + 1, tk + 1)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  SUBCASE("rank-k rows reproduce spherical harmonics") {
    // Row q, column 0 of the conjugate matrix is a spherical harmonic; on the
    // phi = 0 meridian this is the (-1)^q form of the zero row.
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = oracle::random_angles(rng);
      for (int k = 1; k <= 4; ++k) {
        const double c = std::sqrt(4 * std::numbers::pi / (2 * k + 1));
        for (int q = -k; q <= k; ++q) {
          const Complex ylm = oracle::spherical_harmonic(k, q, g.beta, g.alpha);
          const Complex d = std::conj(wigner_d(k, q, 0, {g.alpha, g.beta, 0.0}));
          CHECK(std::abs(d - c * ylm) < 1e-12);
          const double sign = (q % 2 == 0) ? 1.0 : -1.0;
          const Complex d0 = wigner_d(k, 0, q, {0.0, g.beta, 0.0});
          CHECK(std::abs(d0 - sign * c * oracle::spherical_harmonic(k, q, g.beta, 0.0)) < 1e-12);
        }
      }
    }
  }
  SUBCASE("spin-1/2 closed form") {
    const EulerAngles g{0.3, 1.1, -0.7};
    const ComplexMatrix d = wigner_d_matrix(h(1), g);
    const Complex e = std::polar(1.0, -0.5 * (g.alpha + g.gamma));
    CHECK(std::abs(d(0, 0) - e * std::cos(g.beta / 2)) < 1e-15);
    CHECK(std::abs(wigner_small_d(h(1), h(1), h(-1), g.beta) + std::sin(g.beta / 2)) < 1e-15);
  }
  SUBCASE("group composition about z") {
    const ComplexMatrix a = wigner_d_matrix(2, {0.4, 0.9, 0.0});
    const ComplexMatrix b = wigner_d_matrix(2, {0.0, 0.0, 0.5});
    const ComplexMatrix ab = wigner_d_matrix(2, {0.4, 0.9, 0.5});
    CHECK((a * b - ab).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("tau matrices") {
  const double s2 = std::numbers::sqrt2, s5 = std::sqrt(5.0);
  SUBCASE("reference diagonals") {
    const ComplexMatrix t20 = tau_matrix(1, 2, 0);
    CHECK(std::abs(t20(0, 0) - 1.0 / s2) < 1e-14);
    CHECK(std::abs(t20(1, 1) + s2) < 1e-14);
    CHECK(std::abs(t20(2, 2) - 1.0 / s2) < 1e-14);
    const ComplexMatrix t30 = tau_matrix(h(3), 3, 0);
    const double want[] = {1 / s5, -3 / s5, 3 / s5, -1 / s5};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(t30(i, i) - want[i]) < 1e-14);
    for (int tj = 0; tj <= 8; ++tj) {
      CHECK((tau_matrix(h(tj), 0, 0) - ComplexMatrix::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("orthogonality and adjoint rule for j <= 4") {
    for (int tj = 1; tj <= 8; ++tj) {
      const int n = tj + 1;
      std::vector<std::pair<int, ComplexMatrix>> all;  // (k*100+q, matrix)
      for (int k = 0; k <= tj; ++k)
        for (int q = -k; q <= k; ++q) all.emplace_back(k * 100 + q, tau_matrix(h(tj), k, q));
      for (const auto& [ia, a] : all)
        for (const auto& [ib, b] : all) {
          const Complex tr = (a.adjoint() * b).trace();
          CHECK(std::abs(tr - (ia == ib ? Complex(n) : Complex(0))) < 1e-12);
        }
      for (int k = 0; k <= tj; ++k)
        for (int q = -k; q <= k; ++q) {
          const double sign = (q % 2 == 0) ? 1.0 : -1.0;
          CHECK((tau_matrix(h(tj), k, q).adjoint() - sign * tau_matrix(h(tj), k, -q)).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(tau_matrix(1, 3, 0), DomainError);
    CHECK_THROWS_AS(tau_matrix(1, 2, 3), DomainError);
    CHECK(tau_matrices(h(3), 2).size() == 5);
  }
}

TEST_CASE("vector and coupling helpers") {
  const double s2 = std::numbers::sqrt2;
  SUBCASE("q_vector") {
    const auto north = q_vector(0.0, 1.3);
    CHECK(std::abs(north[0] - 1.0) < 1e-15);
    CHECK(std::abs(north[1]) < 1e-15);
    CHECK(std::abs(north[-1]) < 1e-15);
    const auto x = q_vector(std::numbers::pi / 2, 0.0);
    CHECK(std::abs(x[1] + 1.0 / s2) < 1e-15);
    CHECK(std::abs(x[-1] - 1.0 / s2) < 1e-15);
    const double th = 0.7, ph = 2.2;
    const auto v = q_vector(th, ph), w = q_vector(std::numbers::pi - th, std::numbers::pi + ph);
    for (int q = -1; q <= 1; ++q) {
      CHECK(std::abs(v[q] + w[q]) < 1e-14);
      CHECK(std::abs(v[q] - std::sqrt(4 * std::numbers::pi / 3) * oracle::spherical_harmonic(1, q, th, ph)) < 1e-14);
    }
    CHECK(v.conjugation_defect() < 1e-15);
  }
  SUBCASE("couple_pair") {
    const auto z = q_vector(0.0, 0.0);
    const auto zz = couple_pair(z, z, 2);
    CHECK(std::abs(zz[0] - std::sqrt(2.0 / 3.0)) < 1e-15);
    const auto v = q_vector(1.0, 0.4);
    const auto vv1 = couple_pair(v, v, 1);
    CHECK(vv1.max_abs() < 1e-15);
    SphericalTensor unit(0);
    unit[0] = 1.0;
    const auto same = couple_pair(v, unit, 1);
    for (int q = -1; q <= 1; ++q) CHECK(std::abs(same[q] - v[q]) < 1e-15);
    CHECK_THROWS_AS(couple_pair(v, v, 3), DomainError);
    // Two identical unit vectors couple to C(112;000) sqrt(4pi/5) Y^2.
    const auto vv = couple_pair(v, v, 2);
    const double c = std::sqrt(2.0 / 3.0) * std::sqrt(4 * std::numbers::pi / 5);
    for (int q = -2; q <= 2; ++q) CHECK(std::abs(vv[q] - c * oracle::spherical_harmonic(2, q, 1.0, 0.4)) < 1e-14);
  }
  SUBCASE("binomial") {
    CHECK(binomial(6, 3) == 20.0);
    CHECK(binomial(40, 20) == Approx(137846528820.0));
    CHECK(binomial(4, 5) == 0.0);
  }
}
