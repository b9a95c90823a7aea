#include "laglab/catmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "laglab/error.hpp"
#include "laglab/fft.hpp"
#include "laglab/kernels.hpp"
#include "laglab/quadrature.hpp"

namespace laglab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in cat-map arithmetic");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in cat-map arithmetic");
  return r;
}

long long pmod(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

std::string describe(const IMat2& a) {
  std::ostringstream os;
  os << "[[" << a[0][0] << "," << a[0][1] << "],[" << a[1][0] << "," << a[1][1] << "]]";
  return os.str();
}

// e^{i pi r / N} for an integer r taken mod 2N.
cplx half_root(long long r, long long n) { return std::polar(1.0, kPi * double(pmod(r, 2 * n)) / double(n)); }

// Kick phases u_j; see TorusFactor. cN odd needs the j(j+N) form for N-periodicity.
std::vector<cplx> kick_phases(long long c, int n) {
  std::vector<cplx> u(static_cast<std::size_t>(n));
  const long long nn = n;
  const bool odd = pmod(checked_mul(c, nn), 2) == 1;
  for (long long j = 0; j < nn; ++j) {
    const long long q = odd ? j * (j + nn) : j * j;
    u[static_cast<std::size_t>(j)] = half_root(checked_mul(pmod(c, 2 * nn), pmod(q, 2 * nn)), nn);
  }
  return u;
}

void unitary_dft(std::vector<cplx>& v, bool inverse) {
  if (inverse)
    fft::backward(v, v);
  else
    fft::forward(v, v);
  const double s = 1.0 / std::sqrt(double(v.size()));
  for (auto& x : v) x *= s;
}

}  // namespace

IMat2 mat_mul(const IMat2& a, const IMat2& b) {
  IMat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = checked_add(checked_mul(a[i][0], b[0][j]), checked_mul(a[i][1], b[1][j]));
  return r;
}

IVec2 mat_vec(const IMat2& a, const IVec2& v) {
  return {checked_add(checked_mul(a[0][0], v[0]), checked_mul(a[0][1], v[1])),
          checked_add(checked_mul(a[1][0], v[0]), checked_mul(a[1][1], v[1]))};
}

IMat2 transpose(const IMat2& a) { return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}; }

IMat2 mat_mod(const IMat2& a, long long n) {
  return {{{pmod(a[0][0], n), pmod(a[0][1], n)}, {pmod(a[1][0], n), pmod(a[1][1], n)}}};
}

bool has_rational_eigenslope(const IMat2& a) {
  const long long tr = a[0][0] + a[1][1];
  const long long disc = tr * tr - 4;
  if (disc < 0) return false;
  auto r = static_cast<long long>(std::llround(std::sqrt(double(disc))));
  for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c)
    if (c * c == disc) return true;
  return false;
}

CatMap::CatMap(IMat2 a) : a_(a) {
  const long long det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (det != 1) throw ConfigError("cat map " + describe(a) + " has determinant " + std::to_string(det) + ", need 1");
  const long long tr = trace();
  if (std::llabs(tr) <= 2) throw ConfigError("cat map " + describe(a) + " is not hyperbolic: |trace| <= 2");
  if (has_rational_eigenslope(a)) throw ConfigError("cat map " + describe(a) + " has rational eigendirections");
  const double disc = std::sqrt(double(tr) * double(tr) - 4.0);
  const double l1 = 0.5 * (double(tr) + disc), l2 = 0.5 * (double(tr) - disc);
  lambda_plus_ = std::abs(l1) > std::abs(l2) ? l1 : l2;
  lambda_minus_ = 1.0 / lambda_plus_;
  auto eigvec = [&](double l) -> std::array<double, 2> {
    // (A - l) v = 0; pick the better-conditioned row.
    std::array<double, 2> v = std::abs(double(a[0][1])) > std::abs(double(a[1][0]))
                                  ? std::array<double, 2>{double(a[0][1]), l - double(a[0][0])}
                                  : std::array<double, 2>{l - double(a[1][1]), double(a[1][0])};
    const double nrm = std::hypot(v[0], v[1]);
    return {v[0] / nrm, v[1] / nrm};
  };
  unstable_ = eigvec(lambda_plus_);
  stable_ = eigvec(lambda_minus_);
}

RationalPoint CatMap::classical_step(const RationalPoint& z) const {
  if (z.den <= 0) throw DomainError("rational torus point needs a positive denominator");
  const IVec2 v = mat_vec(a_, z.num);
  return {{pmod(v[0], z.den), pmod(v[1], z.den)}, z.den};
}

std::array<double, 2> CatMap::classical_step(std::array<double, 2> z) const {
  std::array<double, 2> out{};
  for (int i = 0; i < 2; ++i) {
    const double v = double(a_[i][0]) * z[0] + double(a_[i][1]) * z[1];
    out[i] = v - std::floor(v);
  }
  return out;
}

IVec2 CatMap::dual_iterate(IVec2 m, int t) const {
  if (t < 0) throw DomainError("dual_iterate needs t >= 0");
  const IMat2 at = transpose(a_);
  for (int s = 0; s < t; ++s) m = mat_vec(at, m);
  return m;
}

long long order_mod(const IMat2& a, long long n) {
  if (n < 1) throw DomainError("order_mod needs a positive modulus");
  const IMat2 base = mat_mod(a, n);
  const IMat2 id = mat_mod(kIdentity2, n);
  IMat2 p = base;
  const long long cap = 12 * n * n + 12;
  for (long long k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = mat_mod(mat_mul(p, base), n);
  }
  throw Error("order_mod: no period found below " + std::to_string(cap));
}

std::array<long long, 2> best_rational(double x, long long max_den) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    const auto a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (r - fl < 1e-15) break;
    r = 1.0 / (r - fl);
  }
  return {p1, q1};
}

std::vector<cplx> weyl_translate(const IVec2& v, const std::vector<cplx>& psi) {
  const auto n = static_cast<long long>(psi.size());
  const long long m = pmod(v[0], 2 * n), s = pmod(v[1], 2 * n);
  const cplx pre = half_root(checked_mul(m, s), n);
  std::vector<cplx> out(psi.size());
  for (long long j = 0; j < n; ++j)
    out[static_cast<std::size_t>(j)] =
        pre * std::polar(1.0, kTwoPi * double(pmod(m * j, n)) / double(n)) * psi[static_cast<std::size_t>((j + s) % n)];
  return out;
}

std::vector<cplx> weyl_translation_matrix(int n, const IVec2& v) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<cplx> mat(un * un);
  std::vector<cplx> e(un);
  for (std::size_t c = 0; c < un; ++c) {
    std::fill(e.begin(), e.end(), cplx{0.0});
    e[c] = 1.0;
    const auto col = weyl_translate(v, e);
    for (std::size_t r = 0; r < un; ++r) mat[r * un + c] = col[r];
  }
  return mat;
}

cplx translation_overlap(const std::vector<cplx>& psi, const IVec2& v) {
  const auto n = static_cast<long long>(psi.size());
  const long long m = pmod(v[0], 2 * n), s = pmod(v[1], 2 * n);
  return half_root(checked_mul(m, s), n) * kernels::omp::shifted_overlap(psi, m, s);
}

std::vector<TorusFactor> factorize(const IMat2& m_in) {
  IMat2 m = m_in;
  if (m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1) throw CapabilityError("factorize: matrix is not in SL(2,Z)");
  std::vector<TorusFactor> out;
  const IMat2 r_inv{{{0, 1}, {-1, 0}}};
  int guard = 0;
  while (m[1][0] != 0) {
    if (++guard > 200) throw CapabilityError("factorize: Euclid reduction did not terminate");
    const long long k = m[0][0] / m[1][0];
    if (k != 0) out.push_back({TorusFactor::Kind::Kick, k});
    out.push_back({TorusFactor::Kind::Fourier, 0});
    const IMat2 shear{{{1, -k}, {0, 1}}};
    m = mat_mul(r_inv, mat_mul(shear, m));
  }
  if (m[0][0] == 1) {
    if (m[0][1] != 0) out.push_back({TorusFactor::Kind::Kick, m[0][1]});
  } else {
    out.push_back({TorusFactor::Kind::Fourier, 0});
    out.push_back({TorusFactor::Kind::Fourier, 0});
    if (m[0][1] != 0) out.push_back({TorusFactor::Kind::Kick, -m[0][1]});
  }
  return out;
}

QuantizedCatMap::QuantizedCatMap(const CatMap& map, int n) : map_(map), n_(n) {
  if (n < 3) throw ConfigError("torus quantization needs N >= 3");
  factors_ = factorize(transpose(map.matrix()));
  for (const auto& f : factors_)
    kicks_.push_back(f.kind == TorusFactor::Kind::Kick ? kick_phases(f.c, n) : std::vector<cplx>{});
}

std::vector<cplx> QuantizedCatMap::apply(const std::vector<cplx>& psi) const {
  if (psi.size() != static_cast<std::size_t>(n_)) throw ConfigError("torus state dimension mismatch");
  std::vector<cplx> v = psi;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].kind == TorusFactor::Kind::Fourier) {
      unitary_dft(v, false);
    } else {
      for (std::size_t j = 0; j < v.size(); ++j) v[j] *= kicks_[i][j];
    }
  }
  return v;
}

std::vector<cplx> QuantizedCatMap::apply_inverse(const std::vector<cplx>& psi) const {
  if (psi.size() != static_cast<std::size_t>(n_)) throw ConfigError("torus state dimension mismatch");
  std::vector<cplx> v = psi;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    if (factors_[i].kind == TorusFactor::Kind::Fourier) {
      unitary_dft(v, true);
    } else {
      for (std::size_t j = 0; j < v.size(); ++j) v[j] *= std::conj(kicks_[i][j]);
    }
  }
  return v;
}

std::vector<cplx> QuantizedCatMap::dense() const {
  const auto un = static_cast<std::size_t>(n_);
  std::vector<cplx> mat(un * un), e(un);
  for (std::size_t c = 0; c < un; ++c) {
    std::fill(e.begin(), e.end(), cplx{0.0});
    e[c] = 1.0;
    const auto col = apply(e);
    for (std::size_t r = 0; r < un; ++r) mat[r * un + c] = col[r];
  }
  return mat;
}

QuantizedCatMap::Conjugate QuantizedCatMap::egorov(IVec2 v, int t) const {
  Conjugate out{v, 1};
  const long long n = n_;
  for (int s = 0; s < t; ++s) {
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const auto& f = factors_[i];
      auto& w = out.v;
      if (f.kind == TorusFactor::Kind::Fourier) {
        w = {-w[1], w[0]};
      } else {
        if (pmod(checked_mul(f.c, n), 2) == 1 && pmod(checked_mul(f.c, w[1]), 2) == 1) out.sign = -out.sign;
        w = {checked_add(w[0], checked_mul(f.c, w[1])), w[1]};
      }
      // T is 2N-periodic in both indices; reducing keeps iterates bounded.
      w = {pmod(w[0], 2 * n), pmod(w[1], 2 * n)};
    }
  }
  return out;
}

cplx TorusObservable::mean() const {
  cplx m{0.0};
  for (const auto& [v, c] : terms)
    if (v[0] == 0 && v[1] == 0) m += c;
  return m;
}

int TorusObservable::max_mode() const {
  long long mx = 0;
  for (const auto& [v, c] : terms) mx = std::max({mx, std::llabs(v[0]), std::llabs(v[1])});
  return static_cast<int>(mx);
}

cplx quantum_character_ev_propagated(const QuantizedCatMap& u, const std::vector<cplx>& psi, const IVec2& m, int t) {
  std::vector<cplx> phi = psi;
  for (int s = 0; s < t; ++s) phi = u.apply(phi);
  return translation_overlap(phi, m);
}

cplx quantum_character_ev_conjugated(const QuantizedCatMap& u, const std::vector<cplx>& psi, const IVec2& m, int t) {
  const auto c = u.egorov(m, t);
  return double(c.sign) * translation_overlap(psi, c.v);
}

CharacterEv quantum_character_ev(const QuantizedCatMap& u, const std::vector<cplx>& psi, const IVec2& m, int t) {
  const long long half = u.dimension() / 2;
  if (std::llabs(m[0]) > half || std::llabs(m[1]) > half) {
    std::ostringstream os;
    os << "mode (" << m[0] << "," << m[1] << ") exceeds the lattice half-width N/2 = " << half;
    throw AliasingError(os.str());
  }
  if (t < 0) throw DomainError("quantum_character_ev needs t >= 0");
  return {quantum_character_ev_propagated(u, psi, m, t), quantum_character_ev_conjugated(u, psi, m, t)};
}

std::vector<cplx> momentum_state(int n, long long k) {
  std::vector<cplx> psi(static_cast<std::size_t>(n));
  const double s = 1.0 / std::sqrt(double(n));
  for (long long j = 0; j < n; ++j)
    psi[static_cast<std::size_t>(j)] = s * std::polar(1.0, kTwoPi * double(pmod(k * j, n)) / double(n));
  return psi;
}

std::vector<cplx> momentum_bump_state(int n, long long k, double kappa, double center) {
  const auto sigma = von_mises_density(kappa, center);
  auto psi = momentum_state(n, k);
  for (int j = 0; j < n; ++j) psi[static_cast<std::size_t>(j)] *= std::sqrt(sigma.value(double(j) / n));
  return psi;
}

namespace {

double bump_profile(double q, double center, double width) {
  const double u = (q - center) / width;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

}  // namespace

std::vector<cplx> line_state(int n, double c, double alpha, double center, double width) {
  if (center - width < 0.0 || center + width > 1.0) throw ConfigError("line-state bump must lie inside [0, 1]");
  std::vector<cplx> psi(static_cast<std::size_t>(n));
  const double s = 1.0 / std::sqrt(double(n));
  for (int j = 0; j < n; ++j) {
    const double q = double(j) / n;
    const double ph = kTwoPi * double(n) * (c * q + 0.5 * alpha * q * q);
    psi[static_cast<std::size_t>(j)] = s * bump_profile(q, center, width) * std::polar(1.0, std::fmod(ph, kTwoPi));
  }
  return psi;
}

LineDensity uniform_density() {
  LineDensity d;
  d.name = "uniform";
  d.value = [](double) { return 1.0; };
  d.transform = [](double q) -> cplx {
    if (q == 0.0) return 1.0;
    if (q == std::round(q)) return 0.0;
    return (std::polar(1.0, kTwoPi * q) - 1.0) / cplx(0.0, kTwoPi * q);
  };
  return d;
}

LineDensity von_mises_density(double kappa, double center) {
  if (!(kappa > 0.0)) throw ConfigError("von Mises concentration must be positive");
  LineDensity d;
  d.name = "von-mises";
  const double i0 = std::cyl_bessel_i(0.0, kappa);
  d.value = [=](double s) { return std::exp(kappa * std::cos(kTwoPi * (s - center))) / i0; };
  d.transform = [=](double q) -> cplx {
    if (q != std::round(q)) {
      const auto rule = gauss_legendre(std::max(64, static_cast<int>(8 * std::abs(q)) + 64), 0.0, 1.0);
      cplx acc{0.0};
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * std::exp(kappa * std::cos(kTwoPi * (rule.nodes[i] - center))) / i0 *
               std::polar(1.0, kTwoPi * q * rule.nodes[i]);
      return acc;
    }
    const double aq = std::abs(q);
    // I_q(kappa) ~ (kappa/2)^q / q! is far below double range beyond this order.
    if (aq > 40.0 * std::max(1.0, kappa)) return 0.0;
    return std::cyl_bessel_i(aq, kappa) / i0 * std::polar(1.0, kTwoPi * q * center);
  };
  return d;
}

LineDensity bump_density(double center, double width) {
  LineDensity d;
  d.name = "bump";
  d.value = [=](double s) { return std::pow(bump_profile(s, center, width), 2); };
  d.transform = [=](double q) -> cplx {
    const int nodes = std::max(96, static_cast<int>(8.0 * std::abs(q) * width) + 96);
    const auto rule = gauss_legendre(nodes, center - width, center + width);
    cplx acc{0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = rule.nodes[i];
      acc += rule.weights[i] * std::pow(bump_profile(s, center, width), 2) * std::polar(1.0, kTwoPi * q * (s - center));
    }
    return acc * std::polar(1.0, kTwoPi * std::fmod(q * center, 1.0));
  };
  return d;
}

cplx line_pairing(const TorusLine& line, const LineDensity& sigma, const IVec2& w) {
  if (line.c_den <= 0 || line.alpha_den <= 0) throw ConfigError("line offset and slope need positive denominators");
  // q = w0 + alpha w1, exact as a rational.
  const long long qn = checked_add(checked_mul(w[0], line.alpha_den), checked_mul(line.alpha_num, w[1]));
  const double q = double(qn) / double(line.alpha_den);
  const long long cn = pmod(checked_mul(w[1], line.c_num), line.c_den);
  return std::polar(1.0, kTwoPi * double(cn) / double(line.c_den)) * sigma.transform(q);
}

cplx line_transport(const CatMap& map, const TorusLine& line, const LineDensity& sigma, const IVec2& m, int t) {
  return line_pairing(line, sigma, map.dual_iterate(m, t));
}

}  // namespace laglab
