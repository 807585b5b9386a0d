#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wco/settings.hpp"

namespace wco {

using complex = std::complex<double>;

/// Truncated power series c_0 + c_1 z + ... + c_N z^N standing in for an
/// analytic function on the unit disk. Immutable; N >= 1 and every
/// coefficient finite.
class TaylorSeries {
 public:
  explicit TaylorSeries(std::vector<complex> coeffs, std::string label = {});

  static TaylorSeries constant(complex c, int order = 1);
  static TaylorSeries identity(int order = 1);
  static TaylorSeries monomial(int power, complex c = 1.0, int order = 0);
  static TaylorSeries zero(int order = 1) { return constant(0.0, order); }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const complex> coeffs() const { return coeffs_; }
  /// Coefficient n, zero beyond the truncation order.
  complex operator[](int n) const {
    return n >= 0 && n <= order() ? coeffs_[static_cast<std::size_t>(n)] : complex{};
  }
  const std::string& label() const { return label_; }
  TaylorSeries with_label(std::string label) const;
  /// Zero-padded or truncated copy of the given order.
  TaylorSeries resized(int order) const;

  double norm() const;  // coefficient l2 norm (H^2 norm of the polynomial)
  double max_abs_coeff() const;
  bool is_zero(double tol = 0.0) const { return max_abs_coeff() <= tol; }

  friend TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b);
  friend TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b);
  friend TaylorSeries operator*(complex s, const TaylorSeries& a);
  friend TaylorSeries operator-(const TaylorSeries& a) { return complex(-1.0) * a; }

 private:
  std::vector<complex> coeffs_;
  std::string label_;
};

/// Max coefficient discrepancy over the common (zero-padded) range.
double coeff_distance(const TaylorSeries& a, const TaylorSeries& b);

/// Values of a function at z_j = r exp(2 pi i j/M), j = 0..M-1.
struct CircleSamples {
  double radius = 0.5;
  std::vector<complex> values;

  CircleSamples() = default;
  CircleSamples(double r, std::vector<complex> v);  // validates invariants
  std::size_t size() const { return values.size(); }
  complex node(std::size_t j) const;
};

std::vector<complex> circle_nodes(double r, std::size_t m);
/// Power-of-two contour size >= max(contour_samples, 2N+2).
std::size_t contour_size(int order, const Settings& cfg = default_settings());
/// Polar disk grid: origin plus radii r*i/R (i=1..R) times angles 2 pi j/A.
std::vector<complex> disk_grid(double r, int radii, int angles);

// ---- evaluation and algebra ------------------------------------------------

/// Horner evaluation; DomainError when |z| > r_work.
complex eval(const TaylorSeries& s, complex z, const Settings& cfg = default_settings());
/// Horner evaluation without the working-radius guard (interior helpers).
complex eval_unchecked(const TaylorSeries& s, complex z);
complex eval_derivative_unchecked(const TaylorSeries& s, complex z);

TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b);
/// Power-series quotient; DivisionByNonUnit when |b(0)| <= eps_unit.
TaylorSeries div(const TaylorSeries& a, const TaylorSeries& b,
                 const Settings& cfg = default_settings());
/// outer o inner, through samples of inner on the r-circle and discrete
/// Cauchy recovery. RangeError if inner leaves |w| <= r_work on the circle.
TaylorSeries compose(const TaylorSeries& outer, const TaylorSeries& inner, double r,
                     const Settings& cfg = default_settings());
/// n c_n moved to position n-1; order kept (last coefficient zero).
TaylorSeries derivative(const TaylorSeries& s);
/// Formal exp(s) and log(s) (the latter needs s(0) = 1).
TaylorSeries series_exp(const TaylorSeries& s);
TaylorSeries series_log(const TaylorSeries& s, const Settings& cfg = default_settings());

// ---- circle transport ------------------------------------------------------

CircleSamples sample_circle(const TaylorSeries& s, double r, std::size_t m);
/// c_n = DFT_n(values) / r^n for n <= N. AliasError when negative-frequency
/// modes exceed alias_tol relative to the sample scale. With `chop`, trailing
/// modes below chop_tol (relative) are set to zero.
TaylorSeries coeffs_from_circle(const CircleSamples& cs, int order,
                                const Settings& cfg = default_settings(), bool chop = false);
/// Largest negative-frequency mode, relative to the sample scale.
double negative_mode_ratio(const CircleSamples& cs);
/// Interior value from circle samples by the trapezoidal Cauchy integral.
complex cauchy_interior(const CircleSamples& cs, complex w);

// ---- zeros and moduli ------------------------------------------------------

/// Winding number of s around 0 on |z| = r (zeros inside |z| < r).
/// ZeroOnContour if min |s| on the contour <= eps_contour.
int count_zeros(const TaylorSeries& s, double r, const Settings& cfg = default_settings());

struct MinModulus {
  double value = 0.0;
  complex location;
};
/// Minimum of |s| over the polar grid of |z| <= r (origin included).
MinModulus min_modulus(const TaylorSeries& s, double r, int radii = 64, int angles = 64);

// ---- named series ----------------------------------------------------------

namespace series {
TaylorSeries exp(int order = 256);        // e^z
TaylorSeries geometric(int order = 256);  // 1/(1-z)
TaylorSeries sin(int order = 256);
TaylorSeries cos(int order = 256);
TaylorSeries koebe(int order = 256, double theta = 0.0);  // z/(1-e^{i theta} z)^2
TaylorSeries polynomial(std::vector<complex> coeffs, int order = 0);
}  // namespace series

}  // namespace wco
