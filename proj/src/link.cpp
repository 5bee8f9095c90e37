#include "binfar/link.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace binfar {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
const double kLogisticRate = std::numbers::pi / std::sqrt(3.0);  // 1/scale
}  // namespace

LinkFunction LinkFunction::from_name(const std::string& name) {
  if (name == "probit" || name == "normal") return probit();
  if (name == "logistic" || name == "logit") return logistic_unit_variance();
  throw std::invalid_argument("unknown link '" + name + "' (expected probit or logistic)");
}

const char* LinkFunction::name() const {
  return kind_ == LinkKind::Probit ? "probit" : "logistic";
}

double LinkFunction::cdf(double x) const {
  if (kind_ == LinkKind::Probit) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
  }
  const double z = x * kLogisticRate;
  // Evaluate in the stable tail direction.
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LinkFunction::pdf(double x) const {
  if (kind_ == LinkKind::Probit) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
  }
  const double p = cdf(x);
  return kLogisticRate * p * (1.0 - p);
}

double LinkFunction::pdf_prime(double x) const {
  if (kind_ == LinkKind::Probit) {
    return -x * pdf(x);
  }
  const double p = cdf(x);
  return kLogisticRate * kLogisticRate * p * (1.0 - p) * (1.0 - 2.0 * p);
}

double LinkFunction::cdf_clamped(double x) const {
  return std::clamp(cdf(x), kProbClampLo, kProbClampHi);
}

}  // namespace binfar
