#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace laglab {

using cplx = std::complex<double>;

/// Point (x, xi) of the cotangent bundle of the circle or of the unit torus.
struct PhasePoint {
  double x = 0.0;
  double xi = 0.0;
};

/// Differential (d_x a, d_xi a) of a complex symbol.
struct Covector {
  cplx dx;
  cplx dxi;
};

/// coeff * exp(i (m x + n xi)). Symbols built from these can be carried over
/// to the torus as discrete Weyl translations.
struct Character {
  int m = 0;
  int n = 0;
  cplx coeff;
};

/// Term c_m(xi) e^{i m x} of an angle-Fourier symbol.
struct FourierTerm {
  int mode = 0;
  std::function<cplx(double)> coeff;
  std::function<cplx(double)> dcoeff;
  bool xi_independent = false;
};

/// Term f(x) g(xi). An empty f or g stands for the constant 1.
struct SeparableTerm {
  std::function<cplx(double)> f, df;
  std::function<cplx(double)> g, dg;
};

struct ClosedForm {
  std::function<cplx(double, double)> value;
  std::function<Covector(double, double)> gradient;  // may be empty
};

struct SymbolDomain {
  double x_lo = -std::numeric_limits<double>::infinity();
  double x_hi = std::numeric_limits<double>::infinity();
  double xi_lo = -std::numeric_limits<double>::infinity();
  double xi_hi = std::numeric_limits<double>::infinity();
};

struct SymbolTraits {
  std::string name;
  bool real = true;
  bool periodic = true;  // 2 pi periodic in x
  SymbolDomain domain{};
};

/// Phase-space function with exact evaluation and analytic gradient.
///
/// Only principal symbols are represented; there is no hbar expansion.
/// Immutable after construction, so concurrent reads are safe.
class Symbol {
 public:
  using Representation =
      std::variant<ClosedForm, std::vector<FourierTerm>, std::vector<SeparableTerm>>;

  static Symbol closed_form(SymbolTraits traits, ClosedForm form);
  static Symbol angle_fourier(SymbolTraits traits, std::vector<FourierTerm> terms);
  static Symbol separable(SymbolTraits traits, std::vector<SeparableTerm> terms);

  /// a(x, xi). Real-flagged symbols return a zero imaginary part.
  cplx eval(PhasePoint p) const;
  /// Exact gradient; throws CapabilityError for a closed form without one.
  Covector grad(PhasePoint p) const;

  const std::string& name() const noexcept { return traits_.name; }
  bool is_real() const noexcept { return traits_.real; }
  bool is_periodic() const noexcept { return traits_.periodic; }
  const SymbolDomain& domain() const noexcept { return traits_.domain; }
  const Representation& representation() const noexcept { return rep_; }
  bool has_gradient() const noexcept;

  const std::optional<std::vector<Character>>& characters() const noexcept {
    return characters_;
  }
  Symbol with_characters(std::vector<Character> chars) const;

  Symbol operator+(const Symbol& other) const;
  Symbol scaled(cplx factor) const;

 private:
  Symbol(SymbolTraits traits, Representation rep) : traits_(std::move(traits)), rep_(std::move(rep)) {}
  void check_domain(PhasePoint p) const;

  SymbolTraits traits_;
  Representation rep_;
  std::optional<std::vector<Character>> characters_;
};

/// Angle-Fourier coefficients a_m(I) = (1/2pi) \int a(x, I) e^{-imx} dx, |m| <= M.
struct FourierTable {
  int cutoff = 0;
  std::vector<cplx> coeffs;  // index m + cutoff
  double tail_mass = 0.0;    // sum of |a_m| for M-2 < |m| <= M

  cplx at(int m) const;
};

FourierTable fourier_coefficients(const Symbol& a, int cutoff, double action);

}  // namespace laglab
