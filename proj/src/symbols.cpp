#include "laglab/symbols.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "laglab/error.hpp"

namespace laglab {
namespace {

constexpr cplx I{0.0, 1.0};

cplx call_or_one(const std::function<cplx(double)>& f, double v) { return f ? f(v) : cplx{1.0}; }
cplx call_or_zero(const std::function<cplx(double)>& f, double v) { return f ? f(v) : cplx{0.0}; }

std::vector<SeparableTerm> as_separable(const std::vector<FourierTerm>& terms) {
  std::vector<SeparableTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    const int m = t.mode;
    SeparableTerm s;
    if (m != 0) {
      s.f = [m](double x) { return std::exp(I * double(m) * x); };
      s.df = [m](double x) { return I * double(m) * std::exp(I * double(m) * x); };
    }
    s.g = t.coeff;
    s.dg = t.dcoeff;
    out.push_back(std::move(s));
  }
  return out;
}

ClosedForm as_closed(const Symbol& s) {
  ClosedForm c;
  c.value = [s](double x, double xi) { return s.eval({x, xi}); };
  if (s.has_gradient()) c.gradient = [s](double x, double xi) { return s.grad({x, xi}); };
  return c;
}

SymbolDomain intersect(const SymbolDomain& a, const SymbolDomain& b) {
  return {std::max(a.x_lo, b.x_lo), std::min(a.x_hi, b.x_hi), std::max(a.xi_lo, b.xi_lo),
          std::min(a.xi_hi, b.xi_hi)};
}

}  // namespace

Symbol Symbol::closed_form(SymbolTraits traits, ClosedForm form) {
  if (!form.value) throw ConfigError("closed-form symbol '" + traits.name + "' has no value callable");
  return Symbol(std::move(traits), std::move(form));
}

Symbol Symbol::angle_fourier(SymbolTraits traits, std::vector<FourierTerm> terms) {
  for (const auto& t : terms)
    if (!t.coeff) throw ConfigError("angle-Fourier symbol '" + traits.name + "' has an empty coefficient");
  traits.periodic = true;
  return Symbol(std::move(traits), std::move(terms));
}

Symbol Symbol::separable(SymbolTraits traits, std::vector<SeparableTerm> terms) {
  return Symbol(std::move(traits), std::move(terms));
}

void Symbol::check_domain(PhasePoint p) const {
  const auto& d = traits_.domain;
  auto fail = [&](const char* coord, double v, double lo, double hi) {
    std::ostringstream os;
    os << "symbol '" << traits_.name << "': coordinate " << coord << " = " << v
       << " outside domain [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  };
  if (!std::isfinite(p.x) || p.x < d.x_lo || p.x > d.x_hi) fail("x", p.x, d.x_lo, d.x_hi);
  if (!std::isfinite(p.xi) || p.xi < d.xi_lo || p.xi > d.xi_hi) fail("xi", p.xi, d.xi_lo, d.xi_hi);
}

bool Symbol::has_gradient() const noexcept {
  if (const auto* c = std::get_if<ClosedForm>(&rep_)) return static_cast<bool>(c->gradient);
  if (const auto* f = std::get_if<std::vector<FourierTerm>>(&rep_)) {
    for (const auto& t : *f)
      if (!t.xi_independent && !t.dcoeff) return false;
    return true;
  }
  for (const auto& t : std::get<std::vector<SeparableTerm>>(rep_))
    if ((t.f && !t.df) || (t.g && !t.dg)) return false;
  return true;
}

cplx Symbol::eval(PhasePoint p) const {
  check_domain(p);
  cplx v = std::visit(
      [&](const auto& rep) -> cplx {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, ClosedForm>) {
          return rep.value(p.x, p.xi);
        } else if constexpr (std::is_same_v<T, std::vector<FourierTerm>>) {
          cplx acc{0.0};
          for (const auto& t : rep) acc += t.coeff(p.xi) * std::exp(I * double(t.mode) * p.x);
          return acc;
        } else {
          cplx acc{0.0};
          for (const auto& t : rep) acc += call_or_one(t.f, p.x) * call_or_one(t.g, p.xi);
          return acc;
        }
      },
      rep_);
  return traits_.real ? cplx{v.real(), 0.0} : v;
}

Covector Symbol::grad(PhasePoint p) const {
  check_domain(p);
  if (!has_gradient())
    throw CapabilityError("symbol '" + traits_.name + "' provides no analytic gradient");
  Covector g = std::visit(
      [&](const auto& rep) -> Covector {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, ClosedForm>) {
          return rep.gradient(p.x, p.xi);
        } else if constexpr (std::is_same_v<T, std::vector<FourierTerm>>) {
          Covector acc{};
          for (const auto& t : rep) {
            const cplx e = std::exp(I * double(t.mode) * p.x);
            acc.dx += I * double(t.mode) * t.coeff(p.xi) * e;
            if (!t.xi_independent) acc.dxi += t.dcoeff(p.xi) * e;
          }
          return acc;
        } else {
          Covector acc{};
          for (const auto& t : rep) {
            const cplx f = call_or_one(t.f, p.x);
            const cplx g = call_or_one(t.g, p.xi);
            acc.dx += call_or_zero(t.df, p.x) * g;
            acc.dxi += f * call_or_zero(t.dg, p.xi);
          }
          return acc;
        }
      },
      rep_);
  if (traits_.real) {
    g.dx = {g.dx.real(), 0.0};
    g.dxi = {g.dxi.real(), 0.0};
  }
  return g;
}

Symbol Symbol::with_characters(std::vector<Character> chars) const {
  Symbol s = *this;
  s.characters_ = std::move(chars);
  return s;
}

Symbol Symbol::operator+(const Symbol& other) const {
  SymbolTraits traits{traits_.name + " + " + other.traits_.name, traits_.real && other.traits_.real,
                      traits_.periodic && other.traits_.periodic,
                      intersect(traits_.domain, other.traits_.domain)};
  const auto* fa = std::get_if<std::vector<FourierTerm>>(&rep_);
  const auto* fb = std::get_if<std::vector<FourierTerm>>(&other.rep_);
  Symbol out = [&]() {
    if (fa && fb) {
      auto terms = *fa;
      terms.insert(terms.end(), fb->begin(), fb->end());
      return Symbol(traits, terms);
    }
    const bool a_struct = !std::holds_alternative<ClosedForm>(rep_);
    const bool b_struct = !std::holds_alternative<ClosedForm>(other.rep_);
    if (a_struct && b_struct) {
      auto sep = [](const Representation& r) {
        if (const auto* f = std::get_if<std::vector<FourierTerm>>(&r)) return as_separable(*f);
        return std::get<std::vector<SeparableTerm>>(r);
      };
      auto terms = sep(rep_);
      auto more = sep(other.rep_);
      terms.insert(terms.end(), more.begin(), more.end());
      return Symbol(traits, terms);
    }
    ClosedForm ca = as_closed(*this), cb = as_closed(other);
    ClosedForm sum;
    sum.value = [ca, cb](double x, double xi) { return ca.value(x, xi) + cb.value(x, xi); };
    if (ca.gradient && cb.gradient)
      sum.gradient = [ca, cb](double x, double xi) {
        Covector g1 = ca.gradient(x, xi), g2 = cb.gradient(x, xi);
        return Covector{g1.dx + g2.dx, g1.dxi + g2.dxi};
      };
    return Symbol(traits, sum);
  }();
  if (characters_ && other.characters_) {
    auto chars = *characters_;
    chars.insert(chars.end(), other.characters_->begin(), other.characters_->end());
    out.characters_ = std::move(chars);
  }
  return out;
}

Symbol Symbol::scaled(cplx factor) const {
  SymbolTraits traits = traits_;
  traits.real = traits_.real && factor.imag() == 0.0;
  Symbol out = std::visit(
      [&](const auto& rep) -> Symbol {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, ClosedForm>) {
          ClosedForm c;
          auto v = rep.value;
          c.value = [v, factor](double x, double xi) { return factor * v(x, xi); };
          if (rep.gradient) {
            auto g = rep.gradient;
            c.gradient = [g, factor](double x, double xi) {
              Covector d = g(x, xi);
              return Covector{factor * d.dx, factor * d.dxi};
            };
          }
          return Symbol(traits, c);
        } else if constexpr (std::is_same_v<T, std::vector<FourierTerm>>) {
          auto terms = rep;
          for (auto& t : terms) {
            auto c = t.coeff;
            t.coeff = [c, factor](double xi) { return factor * c(xi); };
            if (t.dcoeff) {
              auto d = t.dcoeff;
              t.dcoeff = [d, factor](double xi) { return factor * d(xi); };
            }
          }
          return Symbol(traits, terms);
        } else {
          auto terms = rep;
          for (auto& t : terms) {
            auto g = t.g, dg = t.dg;
            t.g = [g, factor](double xi) { return factor * call_or_one(g, xi); };
            t.dg = [dg, factor](double xi) { return factor * call_or_zero(dg, xi); };
          }
          return Symbol(traits, terms);
        }
      },
      rep_);
  if (characters_) {
    auto chars = *characters_;
    for (auto& c : chars) c.coeff *= factor;
    out.characters_ = std::move(chars);
  }
  return out;
}

cplx FourierTable::at(int m) const {
  if (m < -cutoff || m > cutoff) return {0.0, 0.0};
  return coeffs[static_cast<std::size_t>(m + cutoff)];
}

FourierTable fourier_coefficients(const Symbol& a, int cutoff, double action) {
  if (!a.is_periodic())
    throw CapabilityError("symbol '" + a.name() + "' is not 2pi-periodic in the angle");
  if (cutoff < 0) throw ConfigError("Fourier cutoff must be non-negative");
  const int nodes = 8 * cutoff + 16;
  const double h = 2.0 * std::numbers::pi / nodes;
  std::vector<cplx> samples(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) samples[static_cast<std::size_t>(j)] = a.eval({j * h, action});

  FourierTable table;
  table.cutoff = cutoff;
  table.coeffs.resize(static_cast<std::size_t>(2 * cutoff + 1));
  for (int m = -cutoff; m <= cutoff; ++m) {
    cplx acc{0.0};
    for (int j = 0; j < nodes; ++j)
      acc += samples[static_cast<std::size_t>(j)] * std::exp(-I * double(m) * (j * h));
    table.coeffs[static_cast<std::size_t>(m + cutoff)] = acc / double(nodes);
  }
  if (a.is_real()) {
    for (int m = 1; m <= cutoff; ++m) {
      cplx& cp = table.coeffs[static_cast<std::size_t>(cutoff + m)];
      cplx& cn = table.coeffs[static_cast<std::size_t>(cutoff - m)];
      const cplx avg = 0.5 * (cp + std::conj(cn));
      cp = avg;
      cn = std::conj(avg);
    }
    table.coeffs[static_cast<std::size_t>(cutoff)].imag(0.0);
  }
  for (int m = -cutoff; m <= cutoff; ++m)
    if (std::abs(m) > cutoff - 2) table.tail_mass += std::abs(table.at(m));
  return table;
}

}  // namespace laglab
