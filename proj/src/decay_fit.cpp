#include "laglab/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "laglab/error.hpp"

namespace laglab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw InsufficientDataError("line fit needs at least two paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("line fit is degenerate: all abscissae coincide");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.ssr += r * r;
    f.max_residual = std::max(f.max_residual, std::abs(r));
  }
  return f;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& v, DecayModel model, double floor) {
  if (t.size() != v.size()) throw ConfigError("decay_fit: series lengths differ");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(std::abs(v[i]) >= floor) || !std::isfinite(v[i])) continue;
    if (model == DecayModel::Power && !(t[i] > 0.0)) continue;
    xs.push_back(model == DecayModel::Power ? std::log(t[i]) : t[i]);
    ys.push_back(std::log(std::abs(v[i])));
  }
  if (xs.size() < 5)
    throw InsufficientDataError("decay_fit: " + std::to_string(xs.size()) + " usable points, need at least 5");
  const LineFit lf = fit_line(xs, ys);
  DecayFit f;
  f.model = model;
  f.rate = -lf.slope;
  f.amplitude = std::exp(lf.intercept);
  f.max_log_residual = lf.max_residual;
  f.ssr = lf.ssr;
  f.rms_log_residual = std::sqrt(lf.ssr / double(xs.size()));
  f.points_used = static_cast<int>(xs.size());
  return f;
}

}  // namespace laglab
