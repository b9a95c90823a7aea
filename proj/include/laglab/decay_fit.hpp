#pragma once

#include <vector>

namespace laglab {

enum class DecayModel { Exponential, Power };

struct DecayFit {
  DecayModel model = DecayModel::Exponential;
  double rate = 0.0;       // gamma in c e^{-gamma t}, or p in c t^{-p}
  double amplitude = 0.0;  // c
  double max_log_residual = 0.0;
  double rms_log_residual = 0.0;
  double ssr = 0.0;        // sum of squared log residuals
  int points_used = 0;
};

/// Least squares for log|v| against t (exponential) or log t (power). Values
/// with |v| below the floor are dropped; fewer than 5 remaining points throw
/// InsufficientDataError.
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& v, DecayModel model,
                   double floor = 1e-13);

/// Ordinary least-squares line y = intercept + slope x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  double ssr = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace laglab
