#include "ellipt/transform.hpp"

#include <random>
#include <sstream>

#include "ellipt/modforms.hpp"
#include "ellipt/theta.hpp"

namespace ellipt {

namespace {

using K = ThetaKind;

NumericValue th(K k, const Complex& v, const Complex& tau, const LawContext& c, int dv = 0) {
  return numeric_eval(theta_series(k, c.order), EvalPoint{tau, v}, c.bits, dv);
}

NumericValue scale(const NumericValue& x, const Complex& f) {
  NumericValue r = x;
  r.value = x.value * f;
  r.tail = x.tail * f.abs();
  return r;
}

NumericValue sum(const NumericValue& a, const NumericValue& b) {
  NumericValue r = a;
  r.value = a.value + b.value;
  r.tail = a.tail + b.tail;
  return r;
}

Complex I() { return Complex::I(); }
Complex eighth_root() { return cexp(I() * Complex(pi_real() / 4)); }
Complex sqrt_tau_over_i(const Complex& tau) { return csqrt(tau / I()); }
Complex gauss(const Complex& v, const Complex& tau) { return cexp(I() * Complex(pi_real()) * tau * v * v); }

// f(v, tau + 1) = c f'(v, tau) for theta kinds f, f'.
TransformLaw t_law(std::string id, std::string stmt, K lhs, K rhs, bool eighth, int dv, bool info = false) {
  TransformLaw law;
  law.id = std::move(id);
  law.statement = std::move(stmt);
  law.action = LawAction::T;
  law.informational = info;
  law.eval = [=](const Complex& v, const Complex& tau, const LawContext& c) {
    LawSides s;
    s.lhs = th(lhs, v, tau + Complex(1), c, dv);
    s.rhs = th(rhs, v, tau, c, dv);
    if (eighth) s.rhs = scale(s.rhs, eighth_root());
    return s;
  };
  return law;
}

// f(v, -1/tau) = pre (tau/i)^{1/2} e^{pi i tau v^2} f'(tau v, tau).
TransformLaw s_law(std::string id, std::string stmt, K lhs, K rhs, bool over_i) {
  TransformLaw law;
  law.id = std::move(id);
  law.statement = std::move(stmt);
  law.action = LawAction::S;
  law.eval = [=](const Complex& v, const Complex& tau, const LawContext& c) {
    LawSides s;
    s.lhs = th(lhs, v, Complex(-1) / tau, c);
    Complex pre = sqrt_tau_over_i(tau) * gauss(v, tau);
    if (over_i) pre = pre / I();
    s.rhs = scale(th(rhs, tau * v, tau, c), pre);
    return s;
  };
  return law;
}

// f'(v, -1/tau) = pre (tau/i)^{1/2} e^{pi i tau v^2}
//                   (2 pi i tau [v] f'(tau v) + tau f'(tau v)').
// `with_v` false reproduces the display with the factor v dropped.
TransformLaw s_prime_law(std::string id, std::string stmt, K lhs, K rhs, bool over_i, bool with_v,
                         bool info) {
  TransformLaw law;
  law.id = std::move(id);
  law.statement = std::move(stmt);
  law.action = LawAction::S;
  law.informational = info;
  law.eval = [=](const Complex& v, const Complex& tau, const LawContext& c) {
    LawSides s;
    s.lhs = th(lhs, v, Complex(-1) / tau, c, 1);
    Complex pre = sqrt_tau_over_i(tau) * gauss(v, tau);
    if (over_i) pre = pre / I();
    Complex lin = Complex(2 * pi_real()) * I() * tau;
    if (with_v) lin = lin * v;
    NumericValue a = scale(th(rhs, tau * v, tau, c), lin);
    NumericValue b = scale(th(rhs, tau * v, tau, c, 1), tau);
    s.rhs = scale(sum(a, b), pre);
    return s;
  };
  return law;
}

std::vector<TransformLaw> build_theta_laws() {
  std::vector<TransformLaw> laws;
  laws.push_back(t_law("2.12T", "theta(v,tau+1) = e^{pi i/4} theta(v,tau)", K::Theta, K::Theta, true, 0));
  laws.push_back(s_law("2.12S", "theta(v,-1/tau) = (1/i)(tau/i)^{1/2} e^{pi i tau v^2} theta(tau v,tau)",
                       K::Theta, K::Theta, true));
  laws.push_back(t_law("2.13T", "theta1(v,tau+1) = e^{pi i/4} theta1(v,tau)", K::Theta1, K::Theta1, true, 0));
  laws.push_back(s_law("2.13S", "theta1(v,-1/tau) = (tau/i)^{1/2} e^{pi i tau v^2} theta2(tau v,tau)",
                       K::Theta1, K::Theta2, false));
  laws.push_back(t_law("2.14T", "theta2(v,tau+1) = theta3(v,tau)", K::Theta2, K::Theta3, false, 0));
  laws.push_back(s_law("2.14S", "theta2(v,-1/tau) = (tau/i)^{1/2} e^{pi i tau v^2} theta1(tau v,tau)",
                       K::Theta2, K::Theta1, false));
  laws.push_back(t_law("2.15T", "theta3(v,tau+1) = theta2(v,tau)", K::Theta3, K::Theta2, false, 0));
  laws.push_back(s_law("2.15S", "theta3(v,-1/tau) = (tau/i)^{1/2} e^{pi i tau v^2} theta3(tau v,tau)",
                       K::Theta3, K::Theta3, false));
  {
    TransformLaw law;
    law.id = "2.16";
    law.statement = "theta'(0,-1/tau) = (1/i)(tau/i)^{1/2} tau theta'(0,tau)";
    law.action = LawAction::S;
    law.eval = [](const Complex&, const Complex& tau, const LawContext& c) {
      LawSides s;
      s.lhs = th(K::Theta, Complex(0), Complex(-1) / tau, c, 1);
      s.rhs = scale(th(K::Theta, Complex(0), tau, c, 1), sqrt_tau_over_i(tau) * tau / I());
      return s;
    };
    laws.push_back(law);
  }
  laws.push_back(t_law("2.17", "theta'(v,tau+1) = e^{pi i/4} theta'(v,tau)", K::Theta, K::Theta, true, 1));
  laws.push_back(s_prime_law("2.18",
                             "theta'(v,-1/tau) = (1/i)(tau/i)^{1/2} e^{pi i tau v^2} "
                             "(2 pi i tau v theta(tau v,tau) + tau theta'(tau v,tau))",
                             K::Theta, K::Theta, true, true, false));
  laws.push_back(t_law("2.19", "theta1'(v,tau+1) = e^{pi i/4} theta1'(v,tau)", K::Theta1, K::Theta1, true, 1));
  laws.push_back(s_prime_law("2.20",
                             "theta1'(v,-1/tau) = (tau/i)^{1/2} e^{pi i tau v^2} "
                             "(2 pi i tau v theta2(tau v,tau) + tau theta2'(tau v,tau))",
                             K::Theta1, K::Theta2, false, true, false));
  laws.push_back(t_law("2.21", "theta2'(v,tau+1) = theta3'(v,tau)", K::Theta2, K::Theta3, false, 1));
  laws.push_back(s_prime_law("2.22",
                             "theta2'(v,-1/tau) = (tau/i)^{1/2} e^{pi i tau v^2} "
                             "(2 pi i tau v theta1(tau v,tau) + tau theta1'(tau v,tau))",
                             K::Theta2, K::Theta1, false, true, false));
  laws.push_back(t_law("2.23", "theta3'(v,tau+1) = theta2'(v,tau)", K::Theta3, K::Theta2, false, 1));
  laws.push_back(s_prime_law("2.24",
                             "theta3'(v,-1/tau) = (tau/i)^{1/2} e^{pi i tau v^2} "
                             "(2 pi i tau v theta3(tau v,tau) + tau theta3'(tau v,tau))",
                             K::Theta3, K::Theta3, false, true, false));
  for (int which = 0; which < 2; ++which) {
    TransformLaw law;
    const bool delta = which == 0;
    law.id = delta ? "2.26a" : "2.26b";
    law.statement = delta ? "delta2(-1/tau) = tau^2 delta1(tau)" : "eps2(-1/tau) = tau^4 eps1(tau)";
    law.action = LawAction::S;
    law.eval = [delta](const Complex&, const Complex& tau, const LawContext& c) {
      const DeltaEps de = delta ? DeltaEps::Delta : DeltaEps::Eps;
      LawSides s;
      s.lhs = numeric_eval(delta_eps(2, de, c.order), EvalPoint{Complex(-1) / tau, Complex(0)}, c.bits);
      s.rhs = scale(numeric_eval(delta_eps(1, de, c.order), EvalPoint{tau, Complex(0)}, c.bits),
                    cpow_int(tau, delta ? 2 : 4));
      return s;
    };
    laws.push_back(law);
  }
  // The displays as typeset, kept for comparison only.
  laws.push_back(s_prime_law("2.18-printed", "display without the factor v", K::Theta, K::Theta, true, false,
                             true));
  laws.push_back(s_prime_law("2.20-printed", "display with 1/i and without v", K::Theta1, K::Theta2, true,
                             false, true));
  laws.push_back(t_law("2.21-printed", "display with e^{pi i/4}", K::Theta2, K::Theta3, true, 1, true));
  laws.push_back(s_prime_law("2.22-printed", "display with 1/i and without v", K::Theta2, K::Theta1, true,
                             false, true));
  laws.push_back(t_law("2.23-printed", "display with e^{pi i/4}", K::Theta3, K::Theta2, true, 1, true));
  laws.push_back(s_prime_law("2.24-printed", "display with 1/i and without v", K::Theta3, K::Theta3, true,
                             false, true));
  return laws;
}

std::string sci(const Real& x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

const std::vector<TransformLaw>& theta_laws() {
  static const std::vector<TransformLaw> laws = build_theta_laws();
  return laws;
}

const TransformLaw& find_law(const std::vector<TransformLaw>& laws, const std::string& id) {
  for (const auto& l : laws)
    if (l.id == id) return l;
  throw ParseError("unknown transformation law '" + id + "'");
}

Complex apply_action(LawAction action, const Complex& tau) {
  return action == LawAction::T ? tau + Complex(1) : Complex(-1) / tau;
}

void check_domain(const Complex& v, const Complex& tau) {
  if (tau.im < Real("0.5"))
    throw SamplePointOutOfDomain("Im(tau) = " + tau.im.str(6) + " is below 1/2");
  if (boost::multiprecision::abs(v.im) > tau.im / 2)
    throw SamplePointOutOfDomain("|Im v| exceeds Im(tau)/2 at tau = " + tau.str(6));
}

std::vector<Sample> default_samples(LawAction action, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Sample> out;
  for (int k = 0; k < count; ++k) {
    Sample s;
    s.v = Complex(0.35 * u(rng), 0.08 * u(rng));
    if (action == LawAction::S)
      s.tau = Complex(0.15 * u(rng), 1.0 + 0.12 * u(rng));
    else
      s.tau = Complex(0.5 * u(rng), 1.1 + 0.3 * std::abs(u(rng)));
    out.push_back(s);
  }
  return out;
}

VerificationReport check_transformation(const TransformLaw& law, const std::vector<Sample>& samples,
                                        QExp order, unsigned bits) {
  PrecisionScope scope(bits);
  VerificationReport rep;
  rep.title = "law " + law.id + ": " + law.statement;
  const LawContext ctx{order, bits};
  // Promote the samples to the working precision.
  int idx = 0;
  for (const auto& s0 : samples) {
    const Complex v = at_precision(s0.v, bits), tau = at_precision(s0.tau, bits);
    const Complex image = apply_action(law.action, tau);
    check_domain(v, tau);
    check_domain(v, image);
    if (law.action == LawAction::S) check_domain(tau * v, tau);
    LawSides sides = law.eval(v, tau, ctx);
    const Real resid = (sides.lhs.value - sides.rhs.value).abs();
    const Real floor = boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits) + 24) *
                       (1 + sides.lhs.value.abs() + sides.rhs.value.abs());
    const Real tol = sides.lhs.tail + sides.rhs.tail + floor;
    const bool ok = resid <= tol && resid < Real("1e-10");
    CheckEntry e;
    e.id = law.id + "#" + std::to_string(idx++);
    e.status = law.informational ? CheckStatus::Info : (ok ? CheckStatus::Pass : CheckStatus::Fail);
    e.residual = sci(resid);
    e.detail = "tol " + sci(tol) + " at tau=" + tau.str(6) + ", v=" + v.str(6) +
               (law.informational ? (ok ? " (holds)" : " (does not hold)") : "");
    e.orders["N_q"] = order.str();
    e.orders["bits"] = std::to_string(bits);
    rep.add(std::move(e));
  }
  return rep;
}

}  // namespace ellipt
