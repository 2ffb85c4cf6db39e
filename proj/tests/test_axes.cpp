#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "multiaxial/axes.hpp"
#include "multiaxial/families.hpp"
#include "multiaxial/polynomial.hpp"
#include "support/oracle.hpp"

using namespace multiaxial;

namespace {

constexpr double kPi = std::numbers::pi;

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

std::vector<Axis> expand(const std::vector<AxisCount>& axes) {
  std::vector<Axis> out;
  for (const auto& a : axes)
    for (int i = 0; i < a.multiplicity; ++i) out.push_back(a.axis);
  return out;
}

// Largest angle needed to match the two axis multisets one to one.
double multiset_distance(std::vector<Axis> a, std::vector<Axis> b) {
  if (a.size() != b.size()) return kPi;
  double worst = 0.0;
  for (const auto& x : a) {
    auto best = b.end();
    double best_angle = kPi;
    for (auto it = b.begin(); it != b.end(); ++it) {
      const double ang = x.angle_to(*it);
      if (ang < best_angle) {
        best_angle = ang;
        best = it;
      }
    }
    worst = std::max(worst, best_angle);
    b.erase(best);
  }
  return worst;
}

std::vector<Axis> axes_at(std::initializer_list<std::pair<double, double>> angles) {
  std::vector<Axis> out;
  for (const auto& [t, p] : angles) out.push_back(Axis::from_angles(t, p));
  return out;
}

Polynomial monic_from_roots(const std::vector<Complex>& roots) {
  Polynomial p{1.0};
  for (const Complex r : roots) {
    Polynomial next(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = next;
  }
  return p;
}

// p / lead, for comparing polynomials defined up to a constant.
Polynomial normalized(Polynomial p) {
  Complex lead{};
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    if (std::abs(*it) > 1e-12) {
      lead = *it;
      break;
    }
  for (auto& c : p) c /= lead;
  return p;
}

}  // namespace

TEST_CASE("sphere points and axes") {
  SUBCASE("poles are canonical") {
    const auto n = SpherePoint::from_vector({0, 0, 2});
    CHECK(n.theta == 0.0);
    CHECK(n.phi == 0.0);
    const auto s = SpherePoint::from_vector({0, 0, -1});
    CHECK(s.theta == doctest::Approx(kPi));
    CHECK(s.phi == 0.0);
  }
  SUBCASE("phi lies in [0, 2pi)") {
    const auto p = SpherePoint::from_vector({1, -1e-3, 0});
    CHECK(p.phi > 6.2);
    CHECK(p.phi < 2 * kPi);
    const auto q = SpherePoint::from_vector({-1, -1e-20, 0});
    CHECK(q.phi >= 0.0);
  }
  SUBCASE("axis canonicalization") {
    const Axis a = Axis::from_angles(2.5, 4.0);
    const auto& r = a.representative();
    CHECK(r.theta == doctest::Approx(kPi - 2.5));
    CHECK(r.phi == doctest::Approx(4.0 - kPi));
    const Axis again = Axis::from_vector(a.direction());
    CHECK(again.representative().theta == doctest::Approx(r.theta).epsilon(1e-15));
    CHECK(again.representative().phi == doctest::Approx(r.phi).epsilon(1e-15));
    CHECK(Axis::from_angles(kPi, 0).representative().theta == 0.0);
    const Axis eq = Axis::from_angles(kPi / 2, 1.5 * kPi);
    CHECK(eq.representative().phi == doctest::Approx(0.5 * kPi));
    CHECK(Axis::from_vector(-a.direction()).angle_to(a) < 1e-15);
  }
  SUBCASE("angle between lines") {
    const Axis z = Axis::from_angles(0, 0), x = Axis::from_angles(kPi / 2, 0);
    CHECK(z.angle_to(x) == doctest::Approx(kPi / 2));
    CHECK(z.angle_to(Axis::from_angles(0.3, 1.0)) == doctest::Approx(0.3));
    CHECK(z.angle_to(Axis::from_angles(kPi - 0.3, 1.0)) == doctest::Approx(0.3));
  }
}

TEST_CASE("polynomial roots") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  SUBCASE("evaluation and derivatives") {
    const Polynomial p{1.0, 2.0, 3.0};
    CHECK(evaluate(p, 2.0) == Complex(17.0));
    CHECK(derivative(p) == Polynomial{2.0, 6.0});
    CHECK(derivative(p, 2) == Polynomial{6.0});
  }
  SUBCASE("companion matrix recovers random roots") {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Complex> roots;
      for (int i = 0; i < 2 + trial % 10; ++i) roots.emplace_back(g(rng), g(rng));
      auto found = companion_roots(monic_from_roots(roots));
      REQUIRE(found.size() == roots.size());
      for (const Complex r : roots) {
        auto it = std::min_element(found.begin(), found.end(),
                                   [&](Complex a, Complex b) { return std::abs(a - r) < std::abs(b - r); });
        CHECK(std::abs(*it - r) < 1e-8);
        found.erase(it);
      }
    }
  }
  SUBCASE("multiple roots are merged to identical points") {
    const Polynomial p = monic_from_roots({Complex(0, 1), Complex(0, 1), Complex(0, -1), Complex(0, -1), 2.0});
    const SphereRoots r = sphere_roots(p);
    REQUIRE(r.points.size() == 5);
    int at_i = 0;
    for (const auto& v : r.points)
      if ((v - stereographic_to_vector(Complex(0, 1))).norm() < 1e-12) ++at_i;
    CHECK(at_i == 2);
  }
  SUBCASE("noisy multiple roots merge within the declared noise") {
    const Complex a(0.3, -0.7);
    Polynomial p = monic_from_roots(std::vector<Complex>(8, a));
    RootOptions opt;
    for (auto& c : p) {
      c += 1e-13 * Complex(g(rng), g(rng));
      opt.noise.push_back(1e-12);
    }
    const SphereRoots r = sphere_roots(p, opt);
    REQUIRE(r.points.size() == 8);
    CHECK(r.uncertainty > 0.0);
    CHECK(r.uncertainty < 0.1);
    for (const auto& v : r.points) {
      CHECK((v - r.points.front()).norm() == 0.0);
      CHECK((v - stereographic_to_vector(a)).norm() <= r.uncertainty);
    }
    opt.noise.pop_back();
    CHECK_THROWS_AS(sphere_roots(p, opt), DomainError);
  }
  SUBCASE("zero coefficients become poles") {
    const Polynomial p{0.0, 0.0, 1.0, 3.0, 0.0};
    const SphereRoots r = sphere_roots(p);
    CHECK(r.at_zero == 2);
    CHECK(r.at_infinity == 1);
    CHECK(r.points.size() == 4);
    CHECK_THROWS_AS(sphere_roots(Polynomial{0.0, 0.0}), DomainError);
  }
  SUBCASE("stereographic map") {
    CHECK((stereographic_to_vector(0.0) - Vec3(0, 0, 1)).norm() < 1e-15);
    CHECK((stereographic_to_vector(1.0) - Vec3(1, 0, 0)).norm() < 1e-15);
    const double th = 1.2, ph = 0.4;
    const Complex z = std::tan(th / 2) * std::polar(1.0, ph);
    CHECK((stereographic_to_vector(z) - oracle::direction(th, ph)).norm() < 1e-14);
  }
}

TEST_CASE("Majorana constellations") {
  std::mt19937_64 rng(12);
  const auto matches = [](const std::vector<SpherePoint>& got, std::initializer_list<std::pair<double, double>> want) {
    if (got.size() != want.size()) return false;
    std::vector<Vec3> remaining;
    for (const auto& [t, p] : want) remaining.push_back(oracle::direction(t, p));
    for (const auto& s : got) {
      auto it = std::min_element(remaining.begin(), remaining.end(), [&](const Vec3& a, const Vec3& b) {
        return (a - s.vector()).norm() < (b - s.vector()).norm();
      });
      if ((*it - s.vector()).norm() > 1e-8) return false;
      remaining.erase(it);
    }
    return true;
  };
  CHECK(matches(majorana_roots(make_ghz(3)), {{kPi / 2, 0}, {kPi / 2, 2 * kPi / 3}, {kPi / 2, 4 * kPi / 3}}));
  CHECK(matches(majorana_roots(make_ghz(4)),
                {{kPi / 2, kPi / 4}, {kPi / 2, 3 * kPi / 4}, {kPi / 2, 5 * kPi / 4}, {kPi / 2, 7 * kPi / 4}}));
  for (int tj = 1; tj <= 8; ++tj) {
    const auto roots = majorana_roots(make_dicke(h(tj), h(tj)));
    CHECK(roots.size() == static_cast<std::size_t>(tj));
    for (const auto& r : roots) CHECK(r.theta == 0.0);
  }
  CHECK(matches(majorana_roots(make_w(3)), {{0, 0}, {kPi, 0}, {kPi, 0}}));
  for (int trial = 0; trial < 20; ++trial) {
    const auto j = h(1 + trial % 8);
    const auto ang = oracle::random_angles(rng);
    const auto roots = majorana_roots(make_coherent(j, ang.beta, ang.alpha));
    CHECK(roots.size() == static_cast<std::size_t>(j.twice()));
    for (const auto& r : roots) CHECK((r.vector() - oracle::direction(ang.beta, ang.alpha)).norm() < 1e-6);
  }
  SUBCASE("root count conservation on random states") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto j = h(1 + trial % 10);
      CHECK(majorana_roots(oracle::random_pure(j, rng)).size() == static_cast<std::size_t>(j.twice()));
    }
  }
}

TEST_CASE("rank polynomials") {
  SUBCASE("GHZ top rank, odd N: Z^{4j} - 1") {
    for (int n : {3, 5, 7}) {
      const auto p = normalized(mar_polynomial(extract_tensors(pure_to_density(make_ghz(n))), n));
      REQUIRE(p.size() == static_cast<std::size_t>(2 * n + 1));
      for (int i = 1; i < 2 * n; ++i) CHECK(std::abs(p[i]) < 1e-10);
      CHECK(std::abs(p[0] + 1.0) < 1e-10);
    }
  }
  SUBCASE("GHZ top rank, even N: (Z^{2j} + 1)^2") {
    for (int n : {2, 4, 6, 8}) {
      const auto p = normalized(mar_polynomial(extract_tensors(pure_to_density(make_ghz(n))), n));
      REQUIRE(p.size() == static_cast<std::size_t>(2 * n + 1));
      for (int i = 0; i <= 2 * n; ++i) {
        const Complex want = (i == 0 || i == 2 * n) ? 1.0 : (i == n ? 2.0 : 0.0);
        CHECK(std::abs(p[i] - want) < 1e-10);
      }
    }
  }
  SUBCASE("Bell rank 2 keeps only Z^2") {
    const auto p = mar_polynomial(extract_tensors(pure_to_density(make_bell())), 2);
    for (int i = 0; i < 5; ++i) CHECK((std::abs(p[i]) > 1e-12) == (i == 2));
  }
  SUBCASE("coefficient layout") {
    std::mt19937_64 rng(2);
    const auto t = extract_tensors(oracle::random_density(h(3), rng));
    const auto p = mar_polynomial(t, 3);
    for (int q = -3; q <= 3; ++q) CHECK(std::abs(p[3 - q] - std::sqrt(binomial(6, 3 + q)) * t(3, q)) < 1e-14);
    CHECK_THROWS_AS(mar_polynomial(t, 0), DomainError);
    CHECK_THROWS_AS(mar_polynomial(t, 4), DomainError);
  }
  SUBCASE("roots closed under the antipodal map") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = extract_tensors(oracle::random_density(h(2 + trial % 4), rng));
      for (int k = 1; k <= t.max_rank(); ++k) {
        RootOptions opt;
        opt.symmetric_strip = true;
        const auto r = sphere_roots(mar_polynomial(t, k), opt);
        CHECK(r.points.size() == static_cast<std::size_t>(2 * k));
        for (const auto& v : r.points) {
          double best = 2.0;
          for (const auto& w : r.points) best = std::min(best, (v + w).norm());
          CHECK(best < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("axes of reference states") {
  SUBCASE("GHZ-3 rank 3") {
    const auto d = solve_axes(extract_tensors(pure_to_density(make_ghz(3))), 3);
    CHECK(d.axes.size() == 3);
    CHECK(multiset_distance(expand(d.axes), axes_at({{kPi / 2, 0}, {kPi / 2, kPi / 3}, {kPi / 2, 2 * kPi / 3}})) < 1e-8);
    CHECK(d.r == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-10));
  }
  SUBCASE("GHZ-4 rank 4") {
    const auto d = solve_axes(extract_tensors(pure_to_density(make_ghz(4))), 4);
    REQUIRE(d.axes.size() == 2);
    CHECK(d.axes[0].multiplicity == 2);
    CHECK(d.axes[1].multiplicity == 2);
    CHECK(multiset_distance(expand(d.axes), axes_at({{kPi / 2, kPi / 4}, {kPi / 2, kPi / 4}, {kPi / 2, 3 * kPi / 4},
                                                     {kPi / 2, 3 * kPi / 4}})) < 1e-8);
  }
  SUBCASE("W rank 2 is a doubled z axis") {
    const auto d = solve_axes(extract_tensors(pure_to_density(make_w(3))), 2);
    REQUIRE(d.axes.size() == 1);
    CHECK(d.axes[0].multiplicity == 2);
    CHECK(d.axes[0].axis.representative().theta == 0.0);
  }
  SUBCASE("a lone q = 0 component gives k axes along z") {
    for (int k = 1; k <= 6; ++k) {
      SphericalTensorSet t(3);
      t.rank(k)[0] = -0.4;
      const auto d = solve_axes(t, k);
      REQUIRE(d.axes.size() == 1);
      CHECK(d.axes[0].multiplicity == k);
      CHECK(d.axes[0].axis.representative().theta == 0.0);
      CHECK(d.fit_residual < 1e-12);
    }
  }
  SUBCASE("absent rank") {
    const auto d = solve_axes(SphericalTensorSet(2), 3);
    CHECK(d.r == 0.0);
    CHECK(d.axes.empty());
    CHECK_FALSE(d.present());
  }
}

TEST_CASE("r_k fits") {
  const double s2 = std::numbers::sqrt2, s3 = std::numbers::sqrt3, s5 = std::sqrt(5.0);
  const auto r_of = [](const PureState& psi, int k) {
    return solve_axes(extract_tensors(pure_to_density(psi)), k).r;
  };
  CHECK(r_of(make_dicke(1, 1), 1) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
  CHECK(r_of(make_dicke(1, 1), 2) == doctest::Approx(s3 / 2).epsilon(1e-10));
  CHECK(r_of(make_dicke(h(3), h(3)), 1) == doctest::Approx(3 / s5).epsilon(1e-10));
  CHECK(r_of(make_dicke(h(3), h(3)), 2) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
  CHECK(r_of(make_dicke(h(3), h(3)), 3) == doctest::Approx(1 / s2).epsilon(1e-10));
  CHECK(r_of(make_bell(), 2) == doctest::Approx(s3).epsilon(1e-10));
  CHECK(r_of(make_w(3), 1) == doctest::Approx(1 / s5).epsilon(1e-10));
  CHECK(r_of(make_w(3), 2) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
  CHECK(r_of(make_w(3), 3) == doctest::Approx(3 / s2).epsilon(1e-10));

  SUBCASE("direct fit against chosen axes") {
    const auto z = Axis::from_angles(0, 0);
    const auto c = coupled_axes_tensor({{z, 3}});
    // Product of C(n-1 1 n; 0 0 0) for n = 2, 3.
    CHECK(c[0].real() == doctest::Approx(std::sqrt(2.0 / 3.0) * std::sqrt(3.0 / 5.0)).epsilon(1e-14));
    SphericalTensor t(3);
    t[0] = 0.9;
    const auto fit = fit_rk(t, {{z, 3}});
    CHECK(fit.r == doctest::Approx(0.9 / c[0].real()).epsilon(1e-14));
    CHECK(fit.residual < 1e-15);
    CHECK_THROWS_AS(fit_rk(t, {{z, 2}}), DomainError);
  }
}

TEST_CASE("pairwise invariants") {
  SUBCASE("GHZ-3") {
    const auto d = decompose(pure_to_density(make_ghz(3)));
    const auto c = pairwise_invariants(d.ranks);
    const std::vector<double> want{1, 0.5, 0.5, 0.5, 0, 0, 0, 0, 0, 0};
    REQUIRE(c.size() == want.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(want[i]).scale(1.0).epsilon(1e-10));
  }
  SUBCASE("collinear states give ones") {
    const auto c = pairwise_invariants(decompose(pure_to_density(make_dicke(2, 1))).ranks);
    CHECK(c.size() == 45);
    for (double x : c) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("counts for full-rank random states") {
    std::mt19937_64 rng(31);
    for (auto [tj, pairs] : {std::pair{2, 3}, {3, 15}, {4, 45}}) {
      const auto c = pairwise_invariants(decompose(oracle::random_density(h(tj), rng)).ranks);
      CHECK(c.size() == static_cast<std::size_t>(pairs));
      CHECK(std::is_sorted(c.rbegin(), c.rend()));
    }
  }
}

TEST_CASE("rotation rigidity of the decomposition") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const HalfInteger j = h(1 + trial % 4);
    const DensityMatrix rho = (trial % 2) ? oracle::random_density(j, rng) : pure_to_density(oracle::random_pure(j, rng));
    const auto g = oracle::random_angles(rng);
    const auto a = decompose(rho);
    const auto b = decompose(rotate_density(rho, g));
    const Eigen::Matrix3d rot = oracle::rotation(g);
    for (std::size_t i = 0; i < a.ranks.size(); ++i) {
      const auto& ra = a.ranks[i];
      const auto& rb = b.ranks[i];
      CHECK(std::abs(ra.r - rb.r) < 1e-8);
      CHECK(std::abs(ra.fit_residual - rb.fit_residual) < 1e-8);
      std::vector<Axis> moved;
      for (const auto& ax : expand(ra.axes)) moved.push_back(Axis::from_vector(rot * ax.direction()));
      CHECK(multiset_distance(moved, expand(rb.axes)) < 1e-6);
    }
    const auto ca = pairwise_invariants(a.ranks), cb = pairwise_invariants(b.ranks);
    REQUIRE(ca.size() == cb.size());
    for (std::size_t i = 0; i < ca.size(); ++i) CHECK(std::abs(ca[i] - cb[i]) < 1e-8);
  }
}

TEST_CASE("axes reproduce the tensors for every family") {
  const std::vector<DensityMatrix> states{
      pure_to_density(make_ghz(3)),         pure_to_density(make_ghz(6)),
      pure_to_density(make_w(3)),           pure_to_density(make_w(5)),
      pure_to_density(make_bell()),         pure_to_density(make_dicke(h(5), h(1))),
      pure_to_density(make_coherent(2, 0.7, 1.9)),
      make_uniaxial(0.5, 1.0, 2.0),         make_biaxial(0.4, 0.9),
      make_triaxial(std::sqrt(1.5), std::numbers::sqrt3 / 2, 1.2)};
  for (const auto& rho : states) {
    const auto d = decompose(rho);
    for (const auto& r : d.ranks) {
      CHECK(r.fit_residual < 1e-7);
      if (r.present()) CHECK(r.total_multiplicity() == r.k);
      else CHECK(r.axes.empty());
    }
  }
}
