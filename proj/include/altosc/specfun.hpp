#pragma once

#include <cmath>
#include <initializer_list>
#include <span>
#include <string>

#include "altosc/errors.hpp"

namespace altosc {

/// A real number stored as sign * exp(log_magnitude). sign == 0 encodes an exact zero.
struct LogValue {
  double log_magnitude = 0.0;
  int sign = 0;

  static LogValue zero() { return {0.0, 0}; }
  static LogValue from(double x) {
    if (x == 0.0) return zero();
    return {std::log(std::abs(x)), x < 0.0 ? -1 : 1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

  LogValue operator*(const LogValue& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {log_magnitude + o.log_magnitude, sign * o.sign};
  }
  LogValue operator/(const LogValue& o) const {
    if (o.sign == 0) throw DomainError("LogValue: division by zero");
    if (sign == 0) return zero();
    return {log_magnitude - o.log_magnitude, sign * o.sign};
  }
  LogValue sqrt() const {
    if (sign < 0) throw DomainError("LogValue: square root of a negative value");
    if (sign == 0) return zero();
    return {0.5 * log_magnitude, 1};
  }
};

/// ln Gamma(x) for x > 0. Relative error below 1e-13 on (0, 1e6).
double log_gamma(double x);

/// LogValue of prod Gamma(numerator_args) / prod Gamma(denominator_args).
LogValue log_ratio_product(std::span<const double> numerator_args,
                           std::span<const double> denominator_args);

inline LogValue log_ratio_product(std::initializer_list<double> numerator_args,
                                  std::initializer_list<double> denominator_args) {
  return log_ratio_product(std::span<const double>(numerator_args.begin(), numerator_args.size()),
                           std::span<const double>(denominator_args.begin(), denominator_args.size()));
}

template <typename Scalar>
struct SeriesSum {
  Scalar value;
  int terms;  // number of term additions performed
};

namespace detail {

template <typename Scalar>
void check_lower_parameter(int n, const Scalar& c, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": degree must be non-negative");
  using std::floor;
  // (c)_k vanishes for some k < n iff c is an integer in (-n, 0].
  if (c <= Scalar(0) && floor(c) == c && c > Scalar(-n)) {
    throw DomainError(std::string(who) + ": lower parameter makes a Pochhammer symbol vanish");
  }
}

}  // namespace detail

/// 2F1(-n, b; c; x) by forward recurrence on the term ratio, with the number of terms summed.
template <typename Scalar>
SeriesSum<Scalar> hyp2f1_terminating_sum(int n, const Scalar& b, const Scalar& c, const Scalar& x) {
  detail::check_lower_parameter(n, c, "hyp2f1_terminating");
  Scalar term(1);
  Scalar sum(1);
  int terms = 1;
  for (int k = 0; k < n; ++k) {
    term *= Scalar(k - n) * (b + Scalar(k)) * x / ((c + Scalar(k)) * Scalar(k + 1));
    sum += term;
    ++terms;
  }
  return {sum, terms};
}

template <typename Scalar>
Scalar hyp2f1_terminating(int n, const Scalar& b, const Scalar& c, const Scalar& x) {
  return hyp2f1_terminating_sum(n, b, c, x).value;
}

/// 1F1(-n; c; x), the confluent polynomial, with the number of terms summed.
template <typename Scalar>
SeriesSum<Scalar> hyp1f1_terminating_sum(int n, const Scalar& c, const Scalar& x) {
  detail::check_lower_parameter(n, c, "hyp1f1_terminating");
  Scalar term(1);
  Scalar sum(1);
  int terms = 1;
  for (int k = 0; k < n; ++k) {
    term *= Scalar(k - n) * x / ((c + Scalar(k)) * Scalar(k + 1));
    sum += term;
    ++terms;
  }
  return {sum, terms};
}

template <typename Scalar>
Scalar hyp1f1_terminating(int n, const Scalar& c, const Scalar& x) {
  return hyp1f1_terminating_sum(n, c, x).value;
}

}  // namespace altosc
