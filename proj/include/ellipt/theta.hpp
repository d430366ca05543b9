#pragma once

#include <string>

#include "ellipt/series.hpp"

namespace ellipt {

// The four Jacobi theta products in the variables q and y = e^{2 pi i v}.
enum class ThetaKind { Theta, Theta1, Theta2, Theta3 };

ThetaKind parse_theta_kind(const std::string& name);  // "t", "t1", "t2", "t3"
std::string theta_kind_name(ThetaKind k);

// theta_k(v, tau) truncated at q^n. Expansions are cached per (kind, n).
QYSeries<Scalar> theta_series(ThetaKind kind, QExp n);

// theta_k(0, tau); identically zero for ThetaKind::Theta.
QYSeries<Scalar> theta_null(ThetaKind kind, QExp n);

// d/dv theta(v, tau) at v = 0, i.e. 2 pi i y d/dy theta at y = 1.
QYSeries<Scalar> theta_prime_zero(QExp n);

// d/dv of a series in y, staying a series in y: y^b -> 2 pi i b y^b.
QYSeries<Scalar> d_dv(const QYSeries<Scalar>& a);

// eta(tau) = q^{1/24} prod (1 - q^j).
QYSeries<Scalar> eta(QExp n);
// eta^k for any integer k, truncated at q^n.
QYSeries<Scalar> eta_power(int k, QExp n);

// prod_{j>=1} (1 - q^j), the factor written c in the genus formulas.
QYSeries<Scalar> euler_product(QExp n);

}  // namespace ellipt
