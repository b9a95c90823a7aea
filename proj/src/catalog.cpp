#include "laglab/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "laglab/error.hpp"

namespace laglab {
namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double plain_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) throw ConfigError("not a number: '" + s + "'");
  return v;
}

// Fetches args with defaults and rejects names the entry does not know.
class Args {
 public:
  Args(const CallSpec& spec, std::map<std::string, double> defaults) : spec_(spec), values_(std::move(defaults)) {
    for (const auto& [k, v] : spec.args) {
      if (!values_.count(k))
        throw ConfigError("catalog entry '" + spec.name + "' has no parameter '" + k + "'");
      values_[k] = v;
    }
  }
  double operator[](const std::string& k) const { return values_.at(k); }
  int integer(const std::string& k) const {
    const double v = values_.at(k);
    if (v != std::round(v))
      throw ConfigError("catalog entry '" + spec_.name + "': parameter '" + k + "' must be an integer");
    return static_cast<int>(v);
  }

 private:
  const CallSpec& spec_;
  std::map<std::string, double> values_;
};

FourierTerm constant_term(int mode, cplx c) {
  return {mode, [c](double) { return c; }, [](double) { return cplx{0.0}; }, true};
}

Symbol cos_symbol(const std::string& label, double amp, int m, int n, double phase) {
  std::vector<FourierTerm> terms;
  const cplx cp = 0.5 * amp * std::exp(I * phase);
  const cplx cn = std::conj(cp);
  for (auto [mode, c, sign] : {std::tuple{m, cp, 1}, std::tuple{-m, cn, -1}}) {
    FourierTerm t;
    t.mode = mode;
    const double nn = sign * n;
    t.coeff = [c, nn](double xi) { return c * std::exp(I * nn * xi); };
    t.dcoeff = [c, nn](double xi) { return I * nn * c * std::exp(I * nn * xi); };
    t.xi_independent = (n == 0);
    terms.push_back(std::move(t));
  }
  return Symbol::angle_fourier({label, true, true, {}}, std::move(terms))
      .with_characters({{m, n, cp}, {-m, -n, cn}});
}

std::string label_of(const CallSpec& spec) {
  std::string s = spec.name + "(";
  bool first = true;
  for (const auto& [k, v] : spec.args) {
    if (!first) s += ",";
    first = false;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    s += k + "=" + std::string(buf, res.ptr);
  }
  return s + ")";
}

}  // namespace

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("empty numeric value");
  if (auto star = s.find('*'); star != std::string::npos)
    return parse_number(s.substr(0, star)) * parse_number(s.substr(star + 1));
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const double den = parse_number(s.substr(slash + 1));
    if (den == 0.0) throw ConfigError("division by zero in '" + s + "'");
    return parse_number(s.substr(0, slash)) / den;
  }
  if (auto caret = s.find('^'); caret != std::string::npos)
    return std::pow(parse_number(s.substr(0, caret)), parse_number(s.substr(caret + 1)));
  if (s == "pi") return kPi;
  if (s == "-pi") return -kPi;
  return plain_number(s);
}

CallSpec parse_call(const std::string& raw) {
  const std::string text = trim(raw);
  CallSpec spec;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    spec.name = text;
  } else {
    if (text.back() != ')') throw ConfigError("unbalanced parentheses in '" + text + "'");
    spec.name = trim(text.substr(0, open));
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      auto comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      const std::string item = trim(inner.substr(pos, comma - pos));
      pos = comma + 1;
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ConfigError("argument '" + item + "' of '" + spec.name + "' must be key=value");
      spec.args[trim(item.substr(0, eq))] = parse_number(item.substr(eq + 1));
    }
  }
  if (spec.name.empty()) throw ConfigError("missing catalog name in '" + text + "'");
  return spec;
}

std::vector<CallSpec> parse_call_sum(const std::string& text) {
  std::vector<CallSpec> out;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ConfigError("unbalanced parentheses in '" + text + "'");
    if (c == '+' && depth == 0) {
      out.push_back(parse_call(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (depth != 0) throw ConfigError("unbalanced parentheses in '" + text + "'");
  out.push_back(parse_call(current));
  return out;
}

Symbol make_symbol(const CallSpec& spec) {
  const std::string label = label_of(spec);
  if (spec.name == "constant") {
    Args a(spec, {{"c", 1.0}});
    const cplx c = a["c"];
    return Symbol::angle_fourier({label, true, true, {}}, {constant_term(0, c)}).with_characters({{0, 0, c}});
  }
  if (spec.name == "cos" || spec.name == "sin") {
    Args a(spec, {{"amp", 1.0}, {"m", 1.0}, {"n", 0.0}, {"phase", 0.0}});
    const double shift = spec.name == "sin" ? -0.5 * kPi : 0.0;
    return cos_symbol(label, a["amp"], a.integer("m"), a.integer("n"), a["phase"] + shift);
  }
  if (spec.name == "character") {
    Args a(spec, {{"m", 1.0}, {"n", 0.0}, {"amp", 1.0}});
    const int m = a.integer("m"), n = a.integer("n");
    const cplx c = a["amp"];
    FourierTerm t;
    t.mode = m;
    t.coeff = [c, n](double xi) { return c * std::exp(I * double(n) * xi); };
    t.dcoeff = [c, n](double xi) { return I * double(n) * c * std::exp(I * double(n) * xi); };
    t.xi_independent = n == 0;
    return Symbol::angle_fourier({label, false, true, {}}, {t}).with_characters({{m, n, c}});
  }
  if (spec.name == "momentum") {
    Args a(spec, {{"c", 1.0}});
    const double c = a["c"];
    FourierTerm t{0, [c](double xi) { return cplx{c * xi}; }, [c](double) { return cplx{c}; }, false};
    return Symbol::angle_fourier({label, true, true, {}}, {t});
  }
  if (spec.name == "rotor-H") {
    Args a(spec, {});
    FourierTerm t{0, [](double xi) { return cplx{0.5 * xi * xi}; }, [](double xi) { return cplx{xi}; }, false};
    return Symbol::angle_fourier({label, true, true, {}}, {t});
  }
  if (spec.name == "pendulum-H") {
    Args a(spec, {{"kappa", 1.0}});
    const double k = a["kappa"];
    FourierTerm kin{0, [](double xi) { return cplx{0.5 * xi * xi}; }, [](double xi) { return cplx{xi}; }, false};
    return Symbol::angle_fourier({label, true, true, {}},
                                 {kin, constant_term(1, 0.5 * k), constant_term(-1, 0.5 * k)});
  }
  if (spec.name == "plane") {
    Args a(spec, {{"p", 1.0}});
    const double p = a["p"];
    ClosedForm c{[p](double x, double) { return cplx{p * x}; },
                 [p](double, double) { return Covector{p, 0.0}; }};
    return Symbol::closed_form({label, true, p == 0.0, {}}, c);
  }
  if (spec.name == "plane-sin") {
    Args a(spec, {{"p", 0.0}, {"kappa", 0.5}, {"mode", 1.0}});
    const double p = a["p"], k = a["kappa"];
    const double md = a.integer("mode");
    ClosedForm c{[=](double x, double) { return cplx{p * x + k * std::sin(md * x)}; },
                 [=](double x, double) { return Covector{p + k * md * std::cos(md * x), 0.0}; }};
    return Symbol::closed_form({label, true, p == 0.0, {}}, c);
  }
  if (spec.name == "shear") {
    Args a(spec, {{"x0", 0.0}, {"kappa", 0.0}});
    const double x0 = a["x0"], k = a["kappa"];
    SeparableTerm t;
    t.g = [=](double xi) { return cplx{x0 * xi + 0.5 * k * xi * xi}; };
    t.dg = [=](double xi) { return cplx{x0 + k * xi}; };
    return Symbol::separable({label, true, true, {}}, {t});
  }
  throw ConfigError("unknown catalog symbol '" + spec.name + "'");
}

Symbol parse_symbol(const std::string& text) {
  const auto terms = parse_call_sum(text);
  Symbol s = make_symbol(terms.front());
  for (std::size_t i = 1; i < terms.size(); ++i) s = s + make_symbol(terms[i]);
  return s;
}

Amplitude make_amplitude(const CallSpec& spec) {
  const std::string label = label_of(spec);
  if (spec.name == "uniform") {
    Args a(spec, {{"c", 1.0 / std::sqrt(2.0 * kPi)}});
    const double c = a["c"];
    return {label, [c](double) { return cplx{c}; }, 0.0, 2.0 * kPi, true};
  }
  if (spec.name == "cosine") {
    Args a(spec, {{"c", 1.0 / std::sqrt(2.0 * kPi)}, {"eps", 0.5}});
    const double c = a["c"], eps = a["eps"];
    return {label, [c, eps](double x) { return cplx{c * (1.0 + eps * std::cos(x))}; }, 0.0, 2.0 * kPi, true};
  }
  if (spec.name == "bump") {
    Args a(spec, {{"center", kPi}, {"width", 1.0}, {"height", 1.0}, {"twist", 0.0}});
    const double c = a["center"], w = a["width"], h = a["height"], tw = a["twist"];
    if (w <= 0.0) throw ConfigError("bump: width must be positive");
    auto f = [=](double x) -> cplx {
      const double u = (x - c) / w;
      if (std::abs(u) >= 1.0) return {0.0, 0.0};
      return h * std::exp(1.0 - 1.0 / (1.0 - u * u)) * std::exp(I * (0.5 * tw * (x - c) * (x - c)));
    };
    return {label, f, c - w, c + w, false};
  }
  if (spec.name == "gauss") {
    Args a(spec, {{"center", 0.0}, {"width", 0.1}, {"height", 1.0}, {"cutoff", 8.0}});
    const double c = a["center"], w = a["width"], h = a["height"], cut = a["cutoff"];
    if (w <= 0.0 || cut <= 0.0) throw ConfigError("gauss: width and cutoff must be positive");
    auto f = [=](double x) -> cplx {
      const double u = (x - c) / w;
      if (std::abs(u) > cut) return {0.0, 0.0};
      return {h * std::exp(-0.5 * u * u), 0.0};
    };
    return {label, f, c - cut * w, c + cut * w, false};
  }
  throw ConfigError("unknown catalog amplitude '" + spec.name + "'");
}

Amplitude parse_amplitude(const std::string& text) { return make_amplitude(parse_call(text)); }

SeparableHamiltonian make_hamiltonian(const CallSpec& spec) {
  if (spec.name == "rotor-H") {
    return {make_symbol(spec), [](double) { return 0.0; }, [](double) { return 0.0; }, true, 0.0};
  }
  if (spec.name == "pendulum-H") {
    Args a(spec, {{"kappa", 1.0}});
    const double k = a["kappa"];
    return {make_symbol(spec), [k](double x) { return k * std::cos(x); },
            [k](double x) { return k * std::sin(x); }, k == 0.0, std::abs(k)};
  }
  throw ConfigError("'" + spec.name + "' is not a separable catalog Hamiltonian (rotor-H, pendulum-H)");
}

SeparableHamiltonian parse_hamiltonian(const std::string& text) { return make_hamiltonian(parse_call(text)); }

std::vector<std::string> catalog_listing() {
  return {
      "constant(c)",
      "cos(amp,m,n,phase)",
      "sin(amp,m,n,phase)",
      "character(m,n,amp)",
      "momentum(c)",
      "plane(p)",
      "plane-sin(p,kappa,mode)",
      "shear(x0,kappa)",
      "rotor-H()",
      "pendulum-H(kappa)",
      "amplitude:uniform(c)",
      "amplitude:cosine(c,eps)",
      "amplitude:bump(center,width,height,twist)",
      "amplitude:gauss(center,width,height,cutoff)",
  };
}

}  // namespace laglab
