#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "conelab/errors.hpp"
#include "conelab/fejer.hpp"

using namespace conelab;
using boost::math::quadrature::gauss;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec grid(double L, std::size_t N) {
  GridSpec g;
  g.L = L;
  g.N = N;
  return g;
}

// Integral of |2 cos(w y)| F(y) over [-L, L], split at the zeros of cos(w y).
double modulated_l1(double w, double L) {
  std::vector<double> cuts{-L};
  for (long n = static_cast<long>(std::floor((-L * w / kPi) - 0.5)); ; ++n) {
    const double z = (n + 0.5) * kPi / w;
    if (z <= -L) continue;
    if (z >= L) break;
    cuts.push_back(z);
  }
  cuts.push_back(L);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += gauss<double, 20>::integrate(
        [w](double y) { return std::abs(2.0 * std::cos(w * y)) * fejer_kernel(y); }, cuts[i], cuts[i + 1]);
  }
  return total;
}

double kernel_integral(double L) {
  double total = 0.0;
  for (double a = -L; a < L; a += 1.0) total += gauss<double, 20>::integrate(fejer_kernel, a, std::min(a + 1.0, L));
  return total;
}

}  // namespace

TEST_CASE("fejer_kernel values") {
  CHECK(fejer_kernel(0.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  CHECK(std::abs(fejer_kernel(2.0 * kPi)) < 1e-15);
  for (double y = 0.5; y < 400.0; y += 0.37) {
    CHECK(fejer_kernel(y) >= 0.0);
    CHECK(fejer_kernel(y) <= 2.0 / (kPi * y * y) + 1e-15);
    CHECK(fejer_kernel(-y) == fejer_kernel(y));
  }
}

TEST_CASE("kernel mass on the grid") {
  const GridSpec g = grid(200.0, std::size_t{1} << 16);
  const auto mu = build_mu(g);
  const double mass = mu.atoms.at(Rational(1)).mass();
  CHECK(std::abs(mass - 1.0) <= 4.0 / (kPi * g.L));
  CHECK(mass == doctest::Approx(kernel_integral(g.L)).epsilon(1e-6));
}

TEST_CASE("build_mu and build_nu") {
  const GridSpec g = grid(50.0, 4096);
  CHECK(build_mu(g).locations() == std::vector<Rational>{Rational(-3), Rational(1)});
  CHECK(build_nu(g).locations() == std::vector<Rational>{Rational(-2), Rational(1)});
  const auto& d = build_mu(g).atoms.at(Rational(-3));
  CHECK(d.values.size() == 4096);
  CHECK(d.y(0) == doctest::Approx(-50.0));
  CHECK(d.values[2048] == doctest::Approx(2.0 / (2.0 * kPi)));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(build_mu(grid(200.0, 1000)), PreconditionError);
  CHECK_THROWS_AS(build_mu(grid(-1.0, 1024)), PreconditionError);
}

TEST_CASE("product_power") {
  const GridSpec g = grid(200.0, std::size_t{1} << 14);
  const auto mu = build_mu(g);
  const auto one = product_power(mu, 1, g);
  CHECK(one.measure.locations() == mu.locations());
  CHECK(one.measure.atoms.at(Rational(1)).values == mu.atoms.at(Rational(1)).values);

  const auto two = product_power(mu, 2, g, 0.002);
  std::vector<Rational> terms;
  for (const auto& [x, l1] : two.term_l1) terms.push_back(x);
  CHECK(terms == std::vector<Rational>{Rational(-6), Rational(-2), Rational(2)});
  CHECK(two.term_l1.at(Rational(-2)) <= 0.02);
  REQUIRE(two.pruned.size() == 1);
  CHECK(two.pruned[0].x == Rational(-2));
  CHECK(two.measure.locations() == std::vector<Rational>{Rational(-6), Rational(2)});
  // F*F keeps unit mass up to truncation
  CHECK(two.measure.atoms.at(Rational(2)).mass() == doctest::Approx(1.0).epsilon(0.02));

  const auto nu2 = product_power(build_nu(g), 2, g, 0.002);
  terms.clear();
  for (const auto& [x, l1] : nu2.term_l1) terms.push_back(x);
  CHECK(terms == std::vector<Rational>{Rational(-4), Rational(-1), Rational(2)});
  CHECK(nu2.term_l1.at(Rational(-1)) <= 0.02);

  CHECK_THROWS_AS(product_power(mu, 0, g), PreconditionError);
  GridSpec tiny = g;
  tiny.max_fft_points = 1024;
  CHECK_THROWS_AS(product_power(mu, 2, tiny), GridOverflow);
}

TEST_CASE("FFT convolution matches direct convolution") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GridSpec g = grid(4.0, 64);
  GridDensity d{-g.L, g.dy(), std::vector<double>(g.N)};
  for (auto& v : d.values) v = u(rng);
  ProductMeasure2D p;
  p.atoms.emplace(Rational(0), d);
  const auto sq = product_power(p, 2, g).measure.atoms.at(Rational(0));
  REQUIRE(sq.values.size() == 2 * g.N - 1);
  CHECK(sq.y0 == doctest::Approx(-2.0 * g.L));
  for (std::size_t n = 0; n < sq.values.size(); ++n) {
    double direct = 0.0;
    for (std::size_t i = 0; i < g.N; ++i) {
      if (n >= i && n - i < g.N) direct += d.values[i] * d.values[n - i];
    }
    CHECK(sq.values[n] == doctest::Approx(direct * g.dy()).epsilon(1e-9));
  }
}

TEST_CASE("closed_form_ft examples") {
  CHECK(std::abs(closed_form_ft(FejerMeasure::Mu, 3, 0.0, 0.0) - std::complex<double>(1.0, 0.0)) < 1e-15);
  const double s = 0.7;
  CHECK(std::abs(closed_form_ft(FejerMeasure::Mu, 2, s, 2.0) - std::polar(1.0, 6.0 * s)) < 1e-15);
  CHECK(closed_form_ft(FejerMeasure::Nu, 1, 0.3, 5.0) == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(closed_form_ft(FejerMeasure::Nu, 2, s, -10.5) - std::polar(0.25, 4.0 * s)) < 1e-15);
  CHECK(std::abs(closed_form_ft(FejerMeasure::Mu, 1, s, 0.5) - std::polar(0.5, -s)) < 1e-15);
  // open intervals: the endpoints fall in "otherwise"
  CHECK(closed_form_ft(FejerMeasure::Mu, 1, 0.0, 1.0) == std::complex<double>(0.0, 0.0));
  CHECK(closed_form_ft(FejerMeasure::Mu, 1, 0.0, 3.0) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("numeric_ft examples") {
  const GridSpec g = grid(200.0, std::size_t{1} << 16);
  const double trunc = 4.0 / (kPi * g.L);
  const auto mu = build_mu(g);
  CHECK(std::abs(numeric_ft(mu, 0.0, 0.0) - 1.0) <= 2.0 * trunc);
  ProductMeasure2D single;
  single.atoms.emplace(Rational(1), mu.atoms.at(Rational(1)));
  CHECK(std::abs(numeric_ft(single, 0.0, 1.0)) < 0.02);
  CHECK(std::abs(numeric_ft(single, 0.0, -1.0)) < 0.02);
  for (double t : {-0.5, 0.0, 0.5}) CHECK(std::abs(numeric_ft(single, 0.0, t) - (1.0 - std::abs(t))) < 0.02);
  CHECK(std::abs(numeric_ft(single, kPi / 2, 0.0) - std::polar(1.0, -kPi / 2)) < 0.02);
  CHECK(std::abs(numeric_ft(build_nu(g), 0.0, 10.0) - 1.0) < 0.02);
}

TEST_CASE("counterexample on a small grid") {
  const GridSpec g = grid(100.0, std::size_t{1} << 14);
  const auto run = run_counterexample(g, 2, 0.02);
  CHECK(run.report.verdict() == Verdict::Pass);
  CHECK(run.report.claim() == Claim::HalfPlaneCounterexample);
  REQUIRE(run.mu_powers.size() == 2);
  const double tv = run.report.computed["tv_difference_nonpositive"].get<double>();
  CHECK(tv >= 0.5);
  CHECK(tv == doctest::Approx(modulated_l1(2.0, g.L) + modulated_l1(10.0, g.L)).epsilon(1e-3));

  const auto dir = std::filesystem::temp_directory_path() / "conelab_fejer_csv";
  std::filesystem::remove_all(dir);
  dump_counterexample_csv(run, dir);
  std::ifstream k2(dir / "k2.csv");
  std::string header;
  std::getline(k2, header);
  CHECK(header == "y,mu_density[x=-6],mu_density[x=2],nu_density[x=-4],nu_density[x=2]");
  CHECK(std::filesystem::exists(dir / "k1.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("counterexample preconditions") {
  const GridSpec g = grid(100.0, 1024);
  CHECK_THROWS_AS(run_counterexample(g, 0, 0.02), PreconditionError);
  CHECK_THROWS_AS(run_counterexample(g, 1, 0.0), PreconditionError);
}

TEST_CASE("half-plane probe reports a candidate") {
  const GridSpec g = grid(100.0, std::size_t{1} << 14);
  const auto r = halfplane_uniqueness_probe(g, 3, 0.02);
  CHECK(r.claim() == Claim::Thm3Search);
  CHECK(r.hypotheses_satisfied());
  CHECK(r.verdict() == Verdict::Fail);
  CHECK(r.computed["candidates"] == 1);
  CHECK(r.computed["agree_up_to"] == 3);
}
