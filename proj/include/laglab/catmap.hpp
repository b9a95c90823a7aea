#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "laglab/symbols.hpp"

namespace laglab {

using IVec2 = std::array<long long, 2>;
using IMat2 = std::array<std::array<long long, 2>, 2>;  // row-major

IMat2 mat_mul(const IMat2& a, const IMat2& b);
IVec2 mat_vec(const IMat2& a, const IVec2& v);
IMat2 transpose(const IMat2& a);
IMat2 mat_mod(const IMat2& a, long long n);
constexpr IMat2 kIdentity2{{{1, 0}, {0, 1}}};

/// Point of the unit torus with common denominator: (num0/den, num1/den).
struct RationalPoint {
  IVec2 num{0, 0};
  long long den = 1;
  bool operator==(const RationalPoint&) const = default;
};

/// Hyperbolic toral automorphism z -> A z mod 1.
class CatMap {
 public:
  explicit CatMap(IMat2 a);

  const IMat2& matrix() const noexcept { return a_; }
  long long trace() const noexcept { return a_[0][0] + a_[1][1]; }
  double lambda_plus() const noexcept { return lambda_plus_; }
  double lambda_minus() const noexcept { return lambda_minus_; }
  /// Gamma_A = ln lambda_plus.
  double lyapunov() const noexcept { return std::log(std::abs(lambda_plus_)); }
  const std::array<double, 2>& unstable_direction() const noexcept { return unstable_; }
  const std::array<double, 2>& stable_direction() const noexcept { return stable_; }

  RationalPoint classical_step(const RationalPoint& z) const;
  std::array<double, 2> classical_step(std::array<double, 2> z) const;
  /// (A^T)^t m in exact integer arithmetic; throws on int64 overflow.
  IVec2 dual_iterate(IVec2 m, int t) const;

 private:
  IMat2 a_;
  double lambda_plus_ = 0.0, lambda_minus_ = 0.0;
  std::array<double, 2> unstable_{}, stable_{};
};

/// True when tr^2 - 4 is a perfect square, i.e. the eigendirections have rational slope.
bool has_rational_eigenslope(const IMat2& a);
/// Smallest k > 0 with A^k = I mod n.
long long order_mod(const IMat2& a, long long n);
/// Best rational approximation p/q of x with q <= max_den (continued fractions).
std::array<long long, 2> best_rational(double x, long long max_den);

/// Discrete Weyl translation on C^N:
/// (T_(m,n) psi)_j = e^{i pi m n/N} e^{2 pi i m j/N} psi_{j+n}; 2N-periodic in m and n.
std::vector<cplx> weyl_translate(const IVec2& v, const std::vector<cplx>& psi);
std::vector<cplx> weyl_translation_matrix(int n, const IVec2& v);
/// <psi, T_v psi>.
cplx translation_overlap(const std::vector<cplx>& psi, const IVec2& v);

/// One factor of the propagator: multiplication by a quadratic phase with
/// index map [[1,c],[0,1]], or the unitary DFT with index map [[0,-1],[1,0]].
struct TorusFactor {
  enum class Kind { Kick, Fourier } kind = Kind::Kick;
  long long c = 0;
};

/// U_N for a cat map, with U^{-1} T_v U = sign(v) T_{A^T v}.
class QuantizedCatMap {
 public:
  QuantizedCatMap(const CatMap& map, int n);

  int dimension() const noexcept { return n_; }
  const CatMap& map() const noexcept { return map_; }
  /// Factors in the order they act on a state.
  const std::vector<TorusFactor>& factors() const noexcept { return factors_; }

  std::vector<cplx> apply(const std::vector<cplx>& psi) const;
  std::vector<cplx> apply_inverse(const std::vector<cplx>& psi) const;
  std::vector<cplx> dense() const;  // row-major N x N

  struct Conjugate {
    IVec2 v;
    int sign = 1;
  };
  /// U^{-t} T_v U^t = sign T_w.
  Conjugate egorov(IVec2 v, int t = 1) const;

 private:
  CatMap map_;
  int n_;
  std::vector<TorusFactor> factors_;
  std::vector<std::vector<cplx>> kicks_;  // tabulated phases, parallel to factors_
};

/// Factorization of an SL(2,Z) matrix M = L_1 ... L_r into shears and rotations.
std::vector<TorusFactor> factorize(const IMat2& m);

/// Real trig-polynomial observable on the torus: sum of c e^{2 pi i <m, z>}.
struct TorusObservable {
  std::vector<std::pair<IVec2, cplx>> terms;
  cplx mean() const;
  int max_mode() const;
};

cplx quantum_character_ev_propagated(const QuantizedCatMap& u, const std::vector<cplx>& psi, const IVec2& m, int t);
cplx quantum_character_ev_conjugated(const QuantizedCatMap& u, const std::vector<cplx>& psi, const IVec2& m, int t);

/// Both evaluation paths of <U^t psi, T_m U^t psi>. Throws AliasingError when
/// a component of m exceeds N/2.
struct CharacterEv {
  cplx propagated;
  cplx conjugated;
};
CharacterEv quantum_character_ev(const QuantizedCatMap& u, const std::vector<cplx>& psi, const IVec2& m, int t);

// States on C^N, normalized so sum |psi_j|^2 is the mass.
std::vector<cplx> momentum_state(int n, long long k);
/// sqrt(sigma(j/N)/N) e^{2 pi i k j/N} with a von Mises density in position.
std::vector<cplx> momentum_bump_state(int n, long long k, double kappa, double center);
/// N^{-1/2} b(q) e^{2 pi i N (c q + alpha q^2/2)}, q = j/N, b a smooth bump.
std::vector<cplx> line_state(int n, double c, double alpha, double center, double width);

/// Line {(s, c + alpha s)} with rational offset and slope.
struct TorusLine {
  long long c_num = 0, c_den = 1;
  long long alpha_num = 0, alpha_den = 1;
};

/// Density sigma(s) on the line parameter with its transform
/// sigma_hat(q) = \int sigma(s) e^{2 pi i q s} ds.
struct LineDensity {
  std::string name;
  std::function<double(double)> value;
  std::function<cplx(double)> transform;
};
LineDensity uniform_density();
LineDensity von_mises_density(double kappa, double center);
/// |b|^2 for the bump of line_state; transform by Gauss-Legendre quadrature.
LineDensity bump_density(double center, double width);

/// \int sigma(s) e^{2 pi i <(A^T)^t m, (s, c + alpha s)>} ds.
cplx line_transport(const CatMap& map, const TorusLine& line, const LineDensity& sigma, const IVec2& m, int t);
/// Same pairing for an already transported frequency w.
cplx line_pairing(const TorusLine& line, const LineDensity& sigma, const IVec2& w);

}  // namespace laglab
