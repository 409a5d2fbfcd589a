#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <map>
#include <vector>

#include "conelab/rational.hpp"
#include "conelab/report.hpp"

namespace conelab {

/// F(y) = (1/2pi) (sin(y/2) / (y/2))^2, with F(0) = 1/(2pi).
double fejer_kernel(double y);

/// Uniform grid y_j = -L + j dy, j = 0..N-1, dy = 2L/N.
struct GridSpec {
  double L = 200.0;
  std::size_t N = std::size_t{1} << 16;
  /// Largest FFT length product_power may allocate; beyond it GridOverflow is thrown.
  std::size_t max_fft_points = std::size_t{1} << 24;
  /// Powers are re-windowed to [-L', L'] with L' = min(k, window_cap_factor) * L.
  double window_cap_factor = 8.0;

  double dy() const noexcept { return 2.0 * L / static_cast<double>(N); }
  void validate() const;
};

/// Samples of a real density on y0 + j dy.
struct GridDensity {
  double y0 = 0.0;
  double dy = 1.0;
  std::vector<double> values;

  double y(std::size_t j) const noexcept { return y0 + static_cast<double>(j) * dy; }
  /// Trapezoid integral.
  double mass() const;
  /// Trapezoid integral of |f|.
  double l1() const;
  double sup_norm() const;
  /// Trapezoid approximation of the integral of f(y) e^{-ity} dy.
  std::complex<double> transform(double t) const;
};

/// sum_x delta_x (x) f_x(y) dy with every density on one common grid.
struct ProductMeasure2D {
  std::map<Rational, GridDensity> atoms;

  std::vector<Rational> locations() const;
};

/// Atom locations and modulation frequencies of the two measures.
struct FejerConfig {
  Rational mu_shift{-3};
  double mu_freq = 2.0;
  Rational nu_shift{-2};
  double nu_freq = 10.0;
};

/// mu = {1: F, mu_shift: 2cos(mu_freq y) F}.
ProductMeasure2D build_mu(const GridSpec& g, const FejerConfig& cfg = {});
/// nu = {1: F, nu_shift: 2cos(nu_freq y) F}.
ProductMeasure2D build_nu(const GridSpec& g, const FejerConfig& cfg = {});

struct PrunedAtom {
  Rational x;
  double l1;
};

struct ProductPower {
  ProductMeasure2D measure;
  /// L1 mass of every x-atom of the full multinomial expansion, before pruning.
  std::map<Rational, double> term_l1;
  std::vector<PrunedAtom> pruned;
  std::size_t fft_points = 0;
};

/// Full convolution power P^{*k}. Each x-location collects the multinomially weighted
/// products of the factor spectra; densities are convolved by zero-padded FFT, so there
/// is no wrap-around. Atoms whose density has L1 mass below prune_below are dropped and
/// listed in `pruned` (prune_below <= 0 disables pruning). Throws GridOverflow when the
/// padded length exceeds g.max_fft_points.
ProductPower product_power(const ProductMeasure2D& P, unsigned k, const GridSpec& g, double prune_below = 0.0);

enum class FejerMeasure { Mu, Nu };

/// The piecewise transform of mu^{*k} or nu^{*k}: e^{-iks}(1-|t|)^k on (-1,1),
/// e^{-iks x0}(1-|t -+ w|)^k on (+-w - 1, +-w + 1) for the modulated atom x0 with
/// frequency w, and 0 otherwise.
/// The t-transform of a mixed term of the power is a product of factor spectra; with
/// w > 2 the supports [-1, 1] and [+-w - 1, +-w + 1] are disjoint, so every such product
/// vanishes and only the pure powers survive. run_counterexample measures the residue.
std::complex<double> closed_form_ft(FejerMeasure id, unsigned k, double s, double t, const FejerConfig& cfg = {});

/// sum_x e^{-isx} * (trapezoid transform of f_x at t).
std::complex<double> numeric_ft(const ProductMeasure2D& P, double s, double t);

struct CounterexampleRun {
  CheckReport report{Claim::HalfPlaneCounterexample};
  std::vector<ProductMeasure2D> mu_powers;  ///< index k-1
  std::vector<ProductMeasure2D> nu_powers;
};

/// Checks, for k = 1..k_max: the x > 0 parts of mu^{*k} and nu^{*k} are the single atom
/// x = k with density sup-difference <= tol; every cross term has L1 mass <= tol; the
/// numeric transforms match closed_form_ft within tol on a 25 x 40 grid of (s, t) with
/// s in [-pi, pi], t in [-12, 12]. Also checks TV((mu - nu) restricted to x <= 0) >= 0.5.
CounterexampleRun run_counterexample(const GridSpec& g, unsigned k_max, double tol, const FejerConfig& cfg = {});

CheckReport verify_counterexample(const GridSpec& g, unsigned k_max, double tol, const FejerConfig& cfg = {});

/// Writes k<k>.csv per power with columns y and mu/nu densities per x-atom.
void dump_counterexample_csv(const CounterexampleRun& run, const std::filesystem::path& dir);

/// The uniqueness question with the cone complement replaced by the half-plane x > 0:
/// mu != nu, yet their powers agree there for k = 1..K within tol. Reports the pair as
/// a candidate (verdict Fail of the Thm3Search claim).
CheckReport halfplane_uniqueness_probe(const GridSpec& g, unsigned K, double tol);

}  // namespace conelab
