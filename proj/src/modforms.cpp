#include "ellipt/modforms.hpp"

#include <map>
#include <mutex>

#include "ellipt/theta.hpp"

namespace ellipt {

namespace {

using S = QYSeries<Scalar>;

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

Scalar bernoulli(int n) {
  static std::mutex mu;
  static std::vector<mpq_class> table{mpq_class(1)};
  if (n < 0) throw BadWeight("Bernoulli index must be nonnegative");
  std::lock_guard lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    const int m = static_cast<int>(table.size());
    mpq_class acc = 0;
    for (int j = 0; j < m; ++j) acc += mpq_class(binom(m + 1, j)) * table[j];
    table.push_back(-acc / mpq_class(m + 1));
  }
  return Scalar(table[n]);
}

S eisenstein(int k, QExp n) {
  if (k < 2 || k % 2 != 0) throw BadWeight("Eisenstein weight must be even and >= 2, got " + std::to_string(k));
  const Scalar factor = Scalar(-2 * k) / bernoulli(k);
  S e(n);
  e.add_term(QExp(), YExp(), Scalar(1));
  for (int m = 1; QExp::integer(m) <= n; ++m) {
    mpz_class sigma = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), d, k - 1);
        sigma += p;
      }
    e.add_term(QExp::integer(m), YExp(), factor * Scalar(mpq_class(sigma)));
  }
  return e;
}

S g2(QExp n) { return eisenstein(2, n).scaled(Scalar::rational(-1, 24)); }

S delta_eps(int i, DeltaEps which, QExp n) {
  auto fourth = [&](ThetaKind k) { return series_pow(theta_null(k, n), 4, n); };
  const Scalar eighth = Scalar::rational(1, 8), sixteenth = Scalar::rational(1, 16);
  switch (i) {
    case 1: {
      S a = fourth(ThetaKind::Theta2), b = fourth(ThetaKind::Theta3);
      return which == DeltaEps::Delta ? (a + b).scaled(eighth) : series_mul(a, b, n).scaled(sixteenth);
    }
    case 2: {
      S a = fourth(ThetaKind::Theta1), b = fourth(ThetaKind::Theta3);
      return which == DeltaEps::Delta ? (a + b).scaled(-eighth) : series_mul(a, b, n).scaled(sixteenth);
    }
    case 3: {
      S a = fourth(ThetaKind::Theta1), b = fourth(ThetaKind::Theta2);
      return which == DeltaEps::Delta ? (a - b).scaled(eighth) : series_mul(a, b, n).scaled(-sixteenth);
    }
    default:
      throw BadWeight("delta/eps index must be 1, 2 or 3");
  }
}

std::string group_name(ModularGroup g) {
  switch (g) {
    case ModularGroup::SL2Z: return "SL2Z";
    case ModularGroup::Gamma0_2: return "Gamma_0(2)";
    case ModularGroup::Gamma0Upper_2: return "Gamma^0(2)";
    case ModularGroup::GammaTheta: return "Gamma_theta";
  }
  return "?";
}

ModularGroup parse_group(const std::string& name) {
  if (name == "SL2Z") return ModularGroup::SL2Z;
  if (name == "Gamma_0(2)" || name == "Gamma0(2)") return ModularGroup::Gamma0_2;
  if (name == "Gamma^0(2)") return ModularGroup::Gamma0Upper_2;
  if (name == "Gamma_theta") return ModularGroup::GammaTheta;
  throw ParseError("unknown modular group '" + name + "'");
}

std::optional<std::vector<Scalar>> solve_leading(const std::vector<std::vector<Scalar>>& a,
                                                 const std::vector<Scalar>& b) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  std::vector<std::vector<Scalar>> rows;  // reduced rows with rhs appended
  std::vector<std::size_t> pivot_col;
  for (std::size_t r = 0; r < a.size() && rows.size() < cols; ++r) {
    std::vector<Scalar> row = a[r];
    row.push_back(b[r]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Scalar f = row[pivot_col[k]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c <= cols; ++c) row[c] -= f * rows[k][c];
    }
    std::size_t p = 0;
    while (p < cols && row[p].is_zero()) ++p;
    if (p == cols) continue;
    const Scalar inv = row[p].inverse();
    for (auto& x : row) x *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Scalar f = rows[k][p];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c <= cols; ++c) rows[k][c] -= f * row[c];
    }
    rows.push_back(std::move(row));
    pivot_col.push_back(p);
  }
  if (rows.size() < cols) return std::nullopt;
  std::vector<Scalar> x(cols);
  for (std::size_t k = 0; k < rows.size(); ++k) x[pivot_col[k]] = rows[k][cols];
  return x;
}

ModularFitResult modular_fit(const S& f, int weight, ModularGroup group) {
  if (group == ModularGroup::Gamma0_2 || group == ModularGroup::GammaTheta)
    throw UnsupportedGroup("direct fitting over " + group_name(group) +
                           " is not provided; fit the Gamma^0(2) conjugate instead");
  if (!f.y_free()) throw MixedRing("modular_fit needs a y-free series");
  ModularFitResult res;
  res.weight = weight;
  res.group = group;
  const bool level2 = group == ModularGroup::Gamma0Upper_2;
  const int step = level2 ? 12 : 24;  // Fourier lattice in 24ths
  if (f.is_exact()) throw InsufficientCoefficients("fit needs a truncated series");
  const QExp n = f.order();

  std::vector<S> basis;
  if (weight >= 0 && weight % 2 == 0) {
    if (!level2) {
      const S e4 = eisenstein(4, n), e6 = eisenstein(6, n);
      for (int b = 0; 6 * b <= weight; ++b) {
        if ((weight - 6 * b) % 4) continue;
        const int a = (weight - 6 * b) / 4;
        basis.push_back(series_mul(series_pow(e4, a, n), series_pow(e6, b, n), n));
        std::string label = a ? "E4" + (a > 1 ? "^" + std::to_string(a) : std::string()) : "";
        if (b) label += (label.empty() ? "" : " ") + std::string("E6") + (b > 1 ? "^" + std::to_string(b) : "");
        res.basis.push_back(label.empty() ? "1" : label);
      }
    } else {
      const S d2 = delta_eps(2, DeltaEps::Delta, n), e2 = delta_eps(2, DeltaEps::Eps, n);
      for (int b = 0; 4 * b <= weight; ++b) {
        const int a = (weight - 4 * b) / 2;
        basis.push_back(series_mul(series_pow(d2, a, n), series_pow(e2, b, n), n));
        std::string label = a ? "delta2" + (a > 1 ? "^" + std::to_string(a) : std::string()) : "";
        if (b) label += (label.empty() ? "" : " ") + std::string("eps2") + (b > 1 ? "^" + std::to_string(b) : "");
        res.basis.push_back(label.empty() ? "1" : label);
      }
    }
  }
  const int dim = static_cast<int>(basis.size());
  const int available = n.n24 >= 0 ? n.n24 / step + 1 : 0;
  if (available < dim + 3)
    throw InsufficientCoefficients("weight " + std::to_string(weight) + " over " + group_name(group) +
                                   " needs " + std::to_string(dim + 3) + " coefficients, have " +
                                   std::to_string(available));
  for (const auto& [k, c] : f.terms())
    if (k.first % step != 0 || k.first < 0)
      throw BadExponent("term q^" + QExp::from_24ths(k.first).str() + " is off the Fourier lattice");

  auto coeff = [](const S& s, int n24) {
    const Scalar* c = s.find(QExp::from_24ths(n24), YExp());
    return c ? *c : Scalar();
  };
  std::vector<std::vector<Scalar>> a;
  std::vector<Scalar> rhs;
  for (int m = 0; m < available; ++m) {
    std::vector<Scalar> row;
    for (const auto& bs : basis) row.push_back(coeff(bs, m * step));
    a.push_back(std::move(row));
    rhs.push_back(coeff(f, m * step));
  }
  auto x = solve_leading(a, rhs);
  res.coefficients = x.value_or(std::vector<Scalar>(dim));
  for (int m = 0; m < available; ++m) {
    Scalar v;
    for (int j = 0; j < dim; ++j) v += res.coefficients[j] * a[m][j];
    if (v != rhs[m]) {
      res.residual = QExp::from_24ths(m * step);
      break;
    }
  }
  return res;
}

}  // namespace ellipt
