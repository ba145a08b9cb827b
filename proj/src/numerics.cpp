#include "stefanchain/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace stefanchain {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::SubdivisionLimit: return "SubdivisionLimit";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DegenerateRoot: return "DegenerateRoot";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ZeroTemperature: return "ZeroTemperature";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::LogDomain: return "LogDomain";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::PicardDiverged: return "PicardDiverged";
    case ErrorCode::NonPositiveBoundary: return "NonPositiveBoundary";
    case ErrorCode::SingularCoefficient: return "SingularCoefficient";
  }
  return "UnknownError";
}

void Interval::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
    fail(ErrorCode::InvalidParams, "interval requires finite lo < hi");
}

void ToleranceSpec::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol > 0.0 || rel_tol > 0.0))
    fail(ErrorCode::InvalidParams, "tolerance requires abs_tol or rel_tol > 0");
  if (max_iter <= 0) fail(ErrorCode::InvalidParams, "tolerance requires max_iter > 0");
}

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi_v<double>;

// Maclaurin series, adequate to full double precision for |x| <= 2.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int k = 1; k < 200; ++k) {
    term *= -x2 / k;
    const double add = term / (2 * k + 1);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// Continued fraction for erfc(x), x >= 2 (modified Lentz).
double erfc_cf(double x) {
  const double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j <= 300; ++j) {
    const double a = (j == 1) ? 1.0 : 0.5 * (j - 1);
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi_v<double> * f;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  if (ax >= 6.0) return x > 0 ? 1.0 : -1.0;
  if (ax <= 2.0) return erf_series(x);
  const double tail = erfc_cf(ax);
  return x > 0 ? 1.0 - tail : tail - 1.0;
}

double erfc(double x) {
  const double ax = std::abs(x);
  if (ax <= 2.0) return 1.0 - erf_series(x);
  const double tail = ax >= 27.0 ? 0.0 : erfc_cf(ax);
  return x > 0 ? tail : 2.0 - tail;
}

double bisect(const std::function<double(double)>& f, Interval bracket,
              const ToleranceSpec& tol) {
  bracket.validate();
  tol.validate();
  double lo = bracket.lo;
  double hi = bracket.hi;
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    fail(ErrorCode::NoSignChange, "f(lo) and f(hi) have the same sign");
  for (int i = 0; i < tol.max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol.abs_tol + tol.rel_tol * std::abs(mid)) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  fail(ErrorCode::MaxIterExceeded, "bisection did not reach tolerance");
}

namespace {

constexpr int kSimpsonMaxDepth = 50;

double simpson(double fa, double fm, double fb, double width) {
  return (fa + 4.0 * fm + fb) * width / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
  if (depth > kSimpsonMaxDepth)
    fail(ErrorCode::SubdivisionLimit, "adaptive quadrature exceeded depth budget");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol) return left + right + err;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const ToleranceSpec& tol) {
  tol.validate();
  if (!(std::isfinite(a) && std::isfinite(b)) || a > b)
    fail(ErrorCode::InvalidParams, "integration requires finite a <= b");
  if (a == b) return 0.0;
  const double abs_tol = tol.abs_tol > 0.0 ? tol.abs_tol : 1e-12;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  return adapt(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), abs_tol, 0);
}

double central_diff(const std::function<double(double)>& f, double x, int order, double h) {
  if (!(h > 0.0)) fail(ErrorCode::InvalidParams, "central_diff requires h > 0");
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
      return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
             (2.0 * h * h * h);
    default:
      fail(ErrorCode::InvalidParams, "central_diff order must be 1, 2 or 3");
  }
}

double default_diff_step(double x, int order) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(1.0, std::abs(x));
  return (order <= 1 ? std::cbrt(eps) : std::pow(eps, 0.25)) * scale;
}

}  // namespace stefanchain
