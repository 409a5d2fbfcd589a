#include "conelab/fejer.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <functional>
#include <numbers>

#include "conelab/errors.hpp"
#include "conelab/io.hpp"

namespace conelab {
namespace {

using nlohmann::json;
using cplx = std::complex<double>;

constexpr std::size_t kPhaseResync = 4096;

GridDensity sample_density(const GridSpec& g, const std::function<double(double)>& f) {
  GridDensity d{-g.L, g.dy(), std::vector<double>(g.N)};
  for (std::size_t j = 0; j < g.N; ++j) d.values[j] = f(d.y(j));
  return d;
}

ProductMeasure2D build_pair(const GridSpec& g, const Rational& shift, double freq) {
  g.validate();
  if (shift == 1) throw PreconditionError("the modulated atom must not sit at x = 1");
  ProductMeasure2D p;
  p.atoms.emplace(Rational(1), sample_density(g, fejer_kernel));
  p.atoms.emplace(shift, sample_density(g, [freq](double y) { return 2.0 * std::cos(freq * y) * fejer_kernel(y); }));
  return p;
}

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

struct FftwBuffers {
  explicit FftwBuffers(std::size_t m)
      : m(m),
        real(static_cast<double*>(fftw_malloc(sizeof(double) * m))),
        spec(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (m / 2 + 1)))) {
    if (real == nullptr || spec == nullptr) throw GridOverflow("FFT buffer allocation failed");
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(m), real, spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(m), spec, real, FFTW_ESTIMATE);
  }
  ~FftwBuffers() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }
  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;

  std::size_t m;
  double* real;
  fftw_complex* spec;
  fftw_plan forward;
  fftw_plan backward;
};

std::vector<cplx> spectrum(FftwBuffers& buf, const std::vector<double>& values) {
  std::fill(buf.real, buf.real + buf.m, 0.0);
  std::copy(values.begin(), values.end(), buf.real);
  fftw_execute(buf.forward);
  std::vector<cplx> out(buf.m / 2 + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {buf.spec[i][0], buf.spec[i][1]};
  return out;
}

void for_each_composition(std::size_t parts, unsigned total, const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> c(parts, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == parts) {
      c[i] = left;
      fn(c);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      c[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
}

std::map<Rational, GridDensity> positive_part(const ProductMeasure2D& p) {
  std::map<Rational, GridDensity> out;
  for (const auto& [x, d] : p.atoms) {
    if (x > 0) out.emplace(x, d);
  }
  return out;
}

double sup_difference(const GridDensity& a, const GridDensity& b) {
  if (a.values.size() != b.values.size() || a.y0 != b.y0) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
  return m;
}

json location_list(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

// TV((mu - nu) restricted to x <= 0); atoms at one location share a grid.
double nonpositive_tv(const ProductMeasure2D& mu, const ProductMeasure2D& nu) {
  std::map<Rational, GridDensity> diff;
  for (const auto& [x, d] : mu.atoms) {
    if (x <= 0) diff.emplace(x, d);
  }
  for (const auto& [x, d] : nu.atoms) {
    if (x > 0) continue;
    auto it = diff.find(x);
    if (it == diff.end()) {
      it = diff.emplace(x, d).first;
      for (auto& v : it->second.values) v = -v;
      continue;
    }
    for (std::size_t j = 0; j < d.values.size(); ++j) it->second.values[j] -= d.values[j];
  }
  double tv = 0.0;
  for (const auto& [x, d] : diff) tv += d.l1();
  return tv;
}

}  // namespace

double fejer_kernel(double y) {
  constexpr double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
  if (std::abs(y) < 1e-8) return inv_two_pi;
  const double r = std::sin(y / 2.0) / (y / 2.0);
  return inv_two_pi * r * r;
}

void GridSpec::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw PreconditionError("grid half-width L must be positive");
  if (N < 2 || !std::has_single_bit(N)) throw PreconditionError("grid size N must be a power of two >= 2");
  if (!(window_cap_factor >= 1.0)) throw PreconditionError("window cap factor must be >= 1");
}

double GridDensity::mass() const {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return dy * (s - 0.5 * (values.front() + values.back()));
}

double GridDensity::l1() const {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return dy * (s - 0.5 * (std::abs(values.front()) + std::abs(values.back())));
}

double GridDensity::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

cplx GridDensity::transform(double t) const {
  if (values.empty()) return {0.0, 0.0};
  const cplx rot = std::polar(1.0, -t * dy);
  cplx phase;
  cplx sum{0.0, 0.0};
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j % kPhaseResync == 0) {
      phase = std::polar(1.0, -t * y(j));
    } else {
      phase *= rot;
    }
    const double w = (j == 0 || j + 1 == values.size()) ? 0.5 : 1.0;
    sum += w * values[j] * phase;
  }
  return sum * dy;
}

std::vector<Rational> ProductMeasure2D::locations() const {
  std::vector<Rational> xs;
  for (const auto& [x, d] : atoms) xs.push_back(x);
  return xs;
}

ProductMeasure2D build_mu(const GridSpec& g, const FejerConfig& cfg) { return build_pair(g, cfg.mu_shift, cfg.mu_freq); }

ProductMeasure2D build_nu(const GridSpec& g, const FejerConfig& cfg) { return build_pair(g, cfg.nu_shift, cfg.nu_freq); }

ProductPower product_power(const ProductMeasure2D& P, unsigned k, const GridSpec& g, double prune_below) {
  if (k == 0) throw PreconditionError("convolution power needs k >= 1");
  ProductPower out;
  if (P.atoms.empty()) return out;
  const GridDensity& ref = P.atoms.begin()->second;
  const std::size_t n = ref.values.size();
  for (const auto& [x, d] : P.atoms) {
    if (d.values.size() != n || d.y0 != ref.y0 || d.dy != ref.dy) {
      throw PreconditionError("x-atom densities must share one grid");
    }
  }

  std::map<Rational, GridDensity> full;
  if (k == 1) {
    full = P.atoms;
  } else {
    const std::size_t full_len = static_cast<std::size_t>(k) * (n - 1) + 1;
    const std::size_t m = std::bit_ceil(full_len);
    if (m > g.max_fft_points) {
      throw GridOverflow("power " + std::to_string(k) + " needs " + std::to_string(m) + " FFT points, budget is " +
                         std::to_string(g.max_fft_points));
    }
    out.fft_points = m;
    FftwBuffers buf(m);
    std::vector<Rational> xs;
    std::vector<std::vector<cplx>> spectra;
    for (const auto& [x, d] : P.atoms) {
      xs.push_back(x);
      spectra.push_back(spectrum(buf, d.values));
    }
    const double scale = std::pow(ref.dy, static_cast<double>(k - 1)) / static_cast<double>(m);
    std::map<Rational, std::vector<cplx>> by_x;
    const double k_fact = factorial(k);
    for_each_composition(xs.size(), k, [&](const std::vector<unsigned>& c) {
      Rational x(0);
      double coeff = k_fact;
      for (std::size_t i = 0; i < c.size(); ++i) {
        x += xs[i] * c[i];
        coeff /= factorial(c[i]);
      }
      auto [it, fresh] = by_x.try_emplace(x, m / 2 + 1, cplx{0.0, 0.0});
      auto& acc = it->second;
      for (std::size_t f = 0; f < acc.size(); ++f) {
        cplx term(coeff * scale, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
          for (unsigned e = 0; e < c[i]; ++e) term *= spectra[i][f];
        }
        acc[f] += term;
      }
    });
    const double y0 = static_cast<double>(k) * ref.y0;
    const double half_width = std::min(static_cast<double>(k), g.window_cap_factor) * g.L + 0.5 * ref.dy;
    for (auto& [x, spec] : by_x) {
      for (std::size_t f = 0; f < spec.size(); ++f) {
        buf.spec[f][0] = spec[f].real();
        buf.spec[f][1] = spec[f].imag();
      }
      fftw_execute(buf.backward);
      std::size_t lo = 0;
      while (lo < full_len && y0 + static_cast<double>(lo) * ref.dy < -half_width) ++lo;
      std::size_t hi = full_len;
      while (hi > lo && y0 + static_cast<double>(hi - 1) * ref.dy > half_width) --hi;
      GridDensity d{y0 + static_cast<double>(lo) * ref.dy, ref.dy, std::vector<double>(buf.real + lo, buf.real + hi)};
      full.emplace(x, std::move(d));
    }
  }

  for (auto& [x, d] : full) {
    const double l1 = d.l1();
    out.term_l1.emplace(x, l1);
    if (prune_below > 0.0 && l1 < prune_below) {
      out.pruned.push_back({x, l1});
    } else {
      out.measure.atoms.emplace(x, std::move(d));
    }
  }
  return out;
}

cplx closed_form_ft(FejerMeasure id, unsigned k, double s, double t, const FejerConfig& cfg) {
  const double x0 = (id == FejerMeasure::Mu ? cfg.mu_shift : cfg.nu_shift).get_d();
  const double w = id == FejerMeasure::Mu ? cfg.mu_freq : cfg.nu_freq;
  const double kd = static_cast<double>(k);
  if (t > -1.0 && t < 1.0) return std::polar(std::pow(1.0 - std::abs(t), kd), -kd * s);
  if (t > -w - 1.0 && t < -w + 1.0) return std::polar(std::pow(1.0 - std::abs(t + w), kd), -kd * s * x0);
  if (t > w - 1.0 && t < w + 1.0) return std::polar(std::pow(1.0 - std::abs(t - w), kd), -kd * s * x0);
  return {0.0, 0.0};
}

cplx numeric_ft(const ProductMeasure2D& P, double s, double t) {
  cplx sum{0.0, 0.0};
  for (const auto& [x, d] : P.atoms) sum += std::polar(1.0, -s * x.get_d()) * d.transform(t);
  return sum;
}

CounterexampleRun run_counterexample(const GridSpec& g, unsigned k_max, double tol, const FejerConfig& cfg) {
  if (k_max == 0) throw PreconditionError("k_max must be >= 1");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  g.validate();
  CounterexampleRun run;
  CheckReport& report = run.report;
  report.hypothesis("grid", true, "L = " + std::to_string(g.L) + ", N = " + std::to_string(g.N));
  report.computed["L"] = g.L;
  report.computed["N"] = g.N;
  report.computed["dy"] = g.dy();
  report.computed["k_max"] = k_max;
  report.computed["tol"] = tol;
  report.computed["prune_below"] = tol / 10.0;

  const ProductMeasure2D mu = build_mu(g, cfg);
  const ProductMeasure2D nu = build_nu(g, cfg);
  report.computed["mu_locations"] = location_list(mu.locations());
  report.computed["nu_locations"] = location_list(nu.locations());
  report.computed["kernel_mass"] = mu.atoms.at(Rational(1)).mass();

  std::vector<double> s_grid(25);
  std::vector<double> t_grid(40);
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    s_grid[i] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) / 24.0;
  }
  for (std::size_t j = 0; j < t_grid.size(); ++j) t_grid[j] = -12.0 + 24.0 * static_cast<double>(j) / 39.0;

  bool ok = true;
  json failures = json::array();
  json levels = json::array();
  for (unsigned k = 1; k <= k_max; ++k) {
    ProductPower pm = product_power(mu, k, g, tol / 10.0);
    ProductPower pn = product_power(nu, k, g, tol / 10.0);
    json level{{"k", k}, {"fft_points", pm.fft_points}};

    // (ii)-(iii) restrictions to x > 0
    const auto mu_pos = positive_part(pm.measure);
    const auto nu_pos = positive_part(pn.measure);
    std::vector<Rational> mu_pos_x;
    std::vector<Rational> nu_pos_x;
    for (const auto& [x, d] : mu_pos) mu_pos_x.push_back(x);
    for (const auto& [x, d] : nu_pos) nu_pos_x.push_back(x);
    level["mu_positive_atoms"] = location_list(mu_pos_x);
    level["nu_positive_atoms"] = location_list(nu_pos_x);
    const std::vector<Rational> expected{Rational(k)};
    const bool same_atoms = mu_pos_x == expected && nu_pos_x == expected;
    double sup_diff = std::numeric_limits<double>::infinity();
    if (same_atoms) sup_diff = sup_difference(mu_pos.begin()->second, nu_pos.begin()->second);
    level["positive_sup_difference"] = same_atoms ? json(sup_diff) : json(nullptr);
    if (!same_atoms || !(sup_diff <= tol)) {
      ok = false;
      failures.push_back({{"k", k}, {"check", "restriction to x > 0"}});
    }

    // (iv) cross terms: everything except the pure powers at k and k*shift
    double max_cross = 0.0;
    json cross = json::object();
    const auto collect_cross = [&](const ProductPower& pp, const Rational& shift, const char* tag) {
      for (const auto& [x, l1] : pp.term_l1) {
        if (x == Rational(k) || x == shift * k) continue;
        cross[std::string(tag) + ":" + to_string(x)] = l1;
        max_cross = std::max(max_cross, l1);
      }
    };
    collect_cross(pm, cfg.mu_shift, "mu");
    collect_cross(pn, cfg.nu_shift, "nu");
    level["cross_term_l1"] = cross;
    level["max_cross_term_l1"] = max_cross;
    if (!(max_cross <= tol)) {
      ok = false;
      failures.push_back({{"k", k}, {"check", "cross-term mass"}, {"l1", max_cross}});
    }
    json pruned = json::array();
    for (const auto& [tag, pp] : {std::pair{"mu", &pm}, std::pair{"nu", &pn}}) {
      for (const auto& p : pp->pruned) pruned.push_back({{"measure", tag}, {"x", to_string(p.x)}, {"l1", p.l1}});
    }
    level["pruned"] = pruned;

    // (vi) transforms; densities are transformed once per t
    double ft_err = 0.0;
    for (const auto& [id, pp] : {std::pair{FejerMeasure::Mu, &pm}, std::pair{FejerMeasure::Nu, &pn}}) {
      for (double t : t_grid) {
        std::vector<std::pair<double, cplx>> parts;
        for (const auto& [x, d] : pp->measure.atoms) parts.emplace_back(x.get_d(), d.transform(t));
        for (double s : s_grid) {
          cplx num{0.0, 0.0};
          for (const auto& [x, dt] : parts) num += std::polar(1.0, -s * x) * dt;
          ft_err = std::max(ft_err, std::abs(num - closed_form_ft(id, k, s, t, cfg)));
        }
      }
    }
    level["ft_max_error"] = ft_err;
    if (!(ft_err <= tol)) {
      ok = false;
      failures.push_back({{"k", k}, {"check", "transform"}, {"max_error", ft_err}});
    }
    levels.push_back(std::move(level));
    run.mu_powers.push_back(std::move(pm.measure));
    run.nu_powers.push_back(std::move(pn.measure));
  }
  report.computed["levels"] = levels;
  report.computed["ft_samples_per_power"] = s_grid.size() * t_grid.size();

  // (v) mu != nu
  const double tv = nonpositive_tv(mu, nu);
  report.computed["tv_difference_nonpositive"] = tv;
  if (!(tv >= 0.5)) {
    ok = false;
    failures.push_back({{"check", "mu != nu"}, {"tv", tv}});
  }
  report.conclude(ok, json{{"failures", failures}});
  return run;
}

CheckReport verify_counterexample(const GridSpec& g, unsigned k_max, double tol, const FejerConfig& cfg) {
  return run_counterexample(g, k_max, tol, cfg).report;
}

void dump_counterexample_csv(const CounterexampleRun& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < run.mu_powers.size(); ++i) {
    const auto& mu = run.mu_powers[i];
    const auto& nu = run.nu_powers[i];
    std::vector<std::pair<std::string, const GridDensity*>> cols;
    for (const auto& [x, d] : mu.atoms) cols.emplace_back("mu_density[x=" + to_string(x) + "]", &d);
    for (const auto& [x, d] : nu.atoms) cols.emplace_back("nu_density[x=" + to_string(x) + "]", &d);
    if (cols.empty()) continue;
    const GridDensity& ref = *cols.front().second;
    std::ofstream out(dir / ("k" + std::to_string(i + 1) + ".csv"));
    if (!out) throw Error("cannot write CSV into " + dir.string());
    out.precision(12);
    out << "y";
    for (const auto& [name, d] : cols) out << ',' << name;
    out << '\n';
    for (std::size_t j = 0; j < ref.values.size(); ++j) {
      out << ref.y(j);
      for (const auto& [name, d] : cols) {
        out << ',';
        if (j < d->values.size()) out << d->values[j];
      }
      out << '\n';
    }
  }
}

CheckReport halfplane_uniqueness_probe(const GridSpec& g, unsigned K, double tol) {
  if (K == 0) throw PreconditionError("K must be >= 1");
  const ProductMeasure2D mu = build_mu(g);
  const ProductMeasure2D nu = build_nu(g);
  CheckReport report(Claim::Thm3Search);
  report.computed["region"] = "x1 > 0";
  report.computed["K"] = K;
  report.computed["tol"] = tol;
  const double tv = nonpositive_tv(mu, nu);
  report.computed["tv_difference_nonpositive"] = tv;
  report.hypothesis("mu, nu non-zero on x1 <= 0", true, "modulated atoms at x = -3 and x = -2");
  report.hypothesis("mu != nu", tv >= 0.5, "TV of the difference on x1 <= 0");
  unsigned agree_up_to = 0;
  json sup = json::array();
  for (unsigned k = 1; k <= K; ++k) {
    const auto pm = positive_part(product_power(mu, k, g, tol / 10.0).measure);
    const auto pn = positive_part(product_power(nu, k, g, tol / 10.0).measure);
    bool agree = pm.size() == pn.size();
    double worst = 0.0;
    for (auto it = pm.begin(); agree && it != pm.end(); ++it) {
      const auto other = pn.find(it->first);
      agree = other != pn.end();
      if (agree) worst = std::max(worst, sup_difference(it->second, other->second));
    }
    agree = agree && worst <= tol;
    sup.push_back(agree ? json(worst) : json(nullptr));
    if (!agree) break;
    agree_up_to = k;
  }
  report.computed["positive_sup_difference"] = sup;
  report.computed["agree_up_to"] = agree_up_to;
  const bool candidate = agree_up_to == K && tv >= 0.5;
  report.computed["candidates"] = candidate ? 1 : 0;
  report.conclude(!candidate, json{{"candidates", json::array({json{{"mode", "fejer"},
                                                                   {"mu_locations", location_list(mu.locations())},
                                                                   {"nu_locations", location_list(nu.locations())},
                                                                   {"tv_difference_nonpositive", tv}}})}});
  return report;
}

}  // namespace conelab
