#pragma once

#include <string>

namespace binfar {

enum class LinkKind {
  Probit,                // standard normal error CDF
  LogisticUnitVariance,  // logistic scaled to unit variance: cdf(x) = 1/(1+exp(-x*pi/sqrt(3)))
};

// CDF / PDF / PDF-derivative bundle for the latent error distribution.
class LinkFunction {
 public:
  static LinkFunction probit() { return LinkFunction(LinkKind::Probit); }
  static LinkFunction logistic_unit_variance() {
    return LinkFunction(LinkKind::LogisticUnitVariance);
  }
  static LinkFunction from_name(const std::string& name);

  LinkKind kind() const { return kind_; }
  const char* name() const;

  double cdf(double x) const;
  double pdf(double x) const;
  double pdf_prime(double x) const;

  // CDF clamped to [1e-12, 1-1e-12]; used inside logs and ratios.
  double cdf_clamped(double x) const;

 private:
  explicit LinkFunction(LinkKind kind) : kind_(kind) {}
  LinkKind kind_;
};

inline constexpr double kProbClampLo = 1e-12;
inline constexpr double kProbClampHi = 1.0 - 1e-12;

}  // namespace binfar
