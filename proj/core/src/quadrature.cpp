#include "cnd/quadrature.hpp"

#include <cmath>

#include "cnd/errors.hpp"

namespace cnd {

namespace {

struct Ctx {
  const std::function<double(double)>& f;
  double tol;        // absolute tolerance for the whole integral
  double total;      // running value
  double err;        // running error estimate
  int max_depth;
};

// One Simpson refinement step on [a,b] with cached endpoint/midpoint values.
void adapt(Ctx& ctx, double a, double b, double fa, double fm, double fb,
           double whole, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = ctx.f(lm), frm = ctx.f(rm);
  double h6 = (b - a) / 12.0;
  double left = h6 * (fa + 4.0 * flm + fm);
  double right = h6 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  // Local acceptance: error estimate |delta|/15, share of tolerance by width.
  // A delta at the rounding floor of the panel sums cannot shrink further, so
  // accept it too (it still feeds the error estimate).
  double local_tol = ctx.tol * (b - a);
  // Midpoint rounding shifts the child panel widths by ~ulp(u), so delta
  // bottoms out near ulp(u) * |f|; below that, refinement only chases noise.
  double span_noise =
      8.0 * 1.1e-16 * std::max(std::fabs(a), std::fabs(b)) / (b - a);
  double floor =
      (64.0 * 1.1e-16 + span_noise) * (std::fabs(left) + std::fabs(right));
  if (std::fabs(delta) <= 15.0 * local_tol || std::fabs(delta) <= floor ||
      depth >= ctx.max_depth) {
    if (depth >= ctx.max_depth &&
        std::fabs(delta) > std::max(15.0 * local_tol, floor))
      throw PrecisionError("integrate: depth limit before tolerance met");
    ctx.total += left + right + delta / 15.0;
    ctx.err += std::fabs(delta) / 15.0 + 1e-16 * std::fabs(left + right);
    return;
  }
  adapt(ctx, a, m, fa, flm, fm, left, depth + 1);
  adapt(ctx, m, b, fm, frm, fb, right, depth + 1);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol) {
  if (!(a <= b)) throw std::domain_error("integrate: requires a <= b");
  if (a == b) return {0.0, 0.0};
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double tol = std::max(abs_tol, rel_tol * std::fabs(coarse));
  if (tol == 0.0) tol = 1e-300;
  Ctx ctx{f, tol / (b - a), 0.0, 0.0, 48};
  adapt(ctx, a, b, fa, fm, fb, coarse, 0);
  // Rescale the tolerance if the coarse estimate was badly off.
  double target = std::max(abs_tol, rel_tol * std::fabs(ctx.total));
  if (ctx.err > target && std::fabs(ctx.total) > 2.0 * std::fabs(coarse)) {
    Ctx retry{f, target / (b - a), 0.0, 0.0, 48};
    adapt(retry, a, b, fa, fm, fb, coarse, 0);
    return {retry.total, retry.err};
  }
  return {ctx.total, ctx.err};
}

}  // namespace cnd
