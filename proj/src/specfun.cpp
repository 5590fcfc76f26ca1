#include "altosc/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace altosc {

namespace {

// zeta(k) - 1 for k = 2, 3, ...
constexpr std::array<double, 30> kZetaMinusOne = {
    6.4493406684822643647e-1, 2.020569031595942854e-1,   8.2323233711138191516e-2,
    3.6927755143369926331e-2, 1.7343061984449139715e-2,  8.3492773819228268398e-3,
    4.0773561979443393787e-3, 2.0083928260822144179e-3,  9.9457512781808533715e-4,
    4.941886041194645587e-4,  2.4608655330804829864e-4,  1.2271334757848914675e-4,
    6.1248135058704829259e-5, 3.0588236307020493552e-5,  1.5282259408651871733e-5,
    7.6371976378997622736e-6, 3.8172932649998398565e-6,  1.9082127165539389257e-6,
    9.5396203387279611315e-7, 4.7693298678780646312e-7,  2.3845050272773299e-7,
    1.1921992596531107307e-7, 5.9608189051259479612e-8,  2.9803503514652280186e-8,
    1.4901554828365041235e-8, 7.450711789835429492e-9,   3.7253340247884570548e-9,
    1.8626597235130490064e-9, 9.3132743241966818287e-10, 4.656629065033784073e-10,
};

// ln Gamma(2 + z) for |z| <= 1/2:
//   z (1 - gamma) + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k
double log_gamma_two_plus(double z) {
  double power = -z;  // (-z)^k after the first update
  double acc = 0.0;
  for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
    const int k = static_cast<int>(i) + 2;
    power *= -z;
    acc += kZetaMinusOne[i] * power / k;
  }
  return z * (1.0 - std::numbers::egamma) + acc;
}

// Stirling series with Bernoulli corrections, x >= 10.
double log_gamma_stirling(double x) {
  // B_{2k} / (2k (2k - 1)), k = 1..8
  constexpr std::array<double, 8> kCoeff = {
      1.0 / 12.0,         -1.0 / 360.0,     1.0 / 1260.0,       -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0,        -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double corr = 0.0;
  for (auto it = kCoeff.rbegin(); it != kCoeff.rend(); ++it) corr = corr * inv2 + *it;
  corr *= inv;
  const double half_log_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + corr;
}

}  // namespace

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) throw DomainError("log_gamma: argument must be positive and finite");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  if (x < 1.5) return log_gamma_two_plus(x - 1.0) - std::log(x);
  if (x <= 2.5) return log_gamma_two_plus(x - 2.0);
  if (x < 10.0) {
    // Step down into [1.5, 2.5]: Gamma(x) = (x-1)(x-2)...(y) Gamma(y).
    double product = 1.0;
    double y = x;
    while (y > 2.5) {
      y -= 1.0;
      product *= y;
    }
    return std::log(product) + log_gamma_two_plus(y - 2.0);
  }
  return log_gamma_stirling(x);
}

LogValue log_ratio_product(std::span<const double> numerator_args,
                           std::span<const double> denominator_args) {
  double acc = 0.0;
  for (double a : numerator_args) {
    if (!(a > 0.0)) throw DomainError("log_ratio_product: arguments must be positive");
    acc += log_gamma(a);
  }
  for (double b : denominator_args) {
    if (!(b > 0.0)) throw DomainError("log_ratio_product: arguments must be positive");
    acc -= log_gamma(b);
  }
  return {acc, 1};
}

}  // namespace altosc
