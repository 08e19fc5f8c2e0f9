#include "alphavb/num.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace alphavb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kProbes = 33;
constexpr int kMaxGoldenIters = 200;

double guarded(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kInf;
}
} // namespace

MinimizeResult scalar_minimize(const std::function<double(double)>& f, double lo,
                               double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) throw std::invalid_argument("domain");

  // Coarse probe pass so the golden section starts in the right basin.
  double best_x = lo, best_v = kInf;
  int best_k = -1;
  for (int k = 0; k < kProbes; ++k) {
    const double x = lo + (hi - lo) * k / (kProbes - 1);
    const double v = guarded(f, x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
      best_k = k;
    }
  }
  if (best_k < 0) throw std::runtime_error("infeasible objective");

  double a = lo + (hi - lo) * std::max(0, best_k - 1) / (kProbes - 1);
  double b = lo + (hi - lo) * std::min(kProbes - 1, best_k + 1) / (kProbes - 1);

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = guarded(f, c);
  double fd = guarded(f, d);
  auto consider = [&](double x, double v) {
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  };
  consider(c, fc);
  consider(d, fd);

  for (int it = 0; it < kMaxGoldenIters; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= tol * std::max(1.0, std::abs(mid))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = guarded(f, c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = guarded(f, d);
      consider(d, fd);
    }
  }
  return {best_x, best_v};
}

} // namespace alphavb
