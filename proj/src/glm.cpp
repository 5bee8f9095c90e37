#include "binfar/glm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binfar/errors.hpp"

namespace binfar {

namespace {

void validate_beta(const Eigen::VectorXd& beta, const Design& design) {
  if (beta.size() != design.k()) {
    throw std::invalid_argument("beta has length " + std::to_string(beta.size()) +
                                ", design expects " + std::to_string(design.k()));
  }
  if (design.w.rows() != design.rows() && design.p() > 0) {
    throw std::invalid_argument("w row count does not match y");
  }
  if (design.f.rows() != design.rows() && design.d() > 0) {
    throw std::invalid_argument("f row count does not match y");
  }
}

// Linear predictor u_t = beta' z_t without materializing z.
Eigen::VectorXd linear_predictor(const Eigen::VectorXd& beta, const Design& design) {
  const Eigen::Index p = design.p();
  const Eigen::Index d = design.d();
  Eigen::VectorXd u = Eigen::VectorXd::Constant(design.rows(), beta(0));
  if (p > 0) u += design.w * beta.segment(1, p);
  if (d > 0) u += design.f * beta.segment(1 + p, d);
  return u;
}

// First and second derivatives of the per-observation log-likelihood
// l(x) = y*log(Phi(x)) + (1-y)*log(1-Phi(x)) at x, with Phi clamped.
struct LDerivs {
  double l1;
  double l2;
};

inline LDerivs l_derivs(double x, double y, const LinkFunction& link) {
  const double cdf = link.cdf_clamped(x);
  const double pdf = link.pdf(x);
  const double dpdf = link.pdf_prime(x);
  const double q = 1.0 - cdf;
  LDerivs out;
  if (y > 0.5) {
    out.l1 = pdf / cdf;
    out.l2 = (dpdf * cdf - pdf * pdf) / (cdf * cdf);
  } else {
    out.l1 = -pdf / q;
    out.l2 = -(dpdf * q + pdf * pdf) / (q * q);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd Design::z() const {
  Eigen::MatrixXd out(rows(), k());
  out.col(0).setOnes();
  if (p() > 0) out.middleCols(1, p()) = w;
  if (d() > 0) out.middleCols(1 + p(), d()) = f;
  return out;
}

double log_likelihood(const Eigen::VectorXd& beta, const Design& design,
                      const LinkFunction& link) {
  validate_beta(beta, design);
  const Eigen::VectorXd u = linear_predictor(beta, design);
  double ll = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double cdf = link.cdf_clamped(u(i));
    ll += design.y(i) > 0.5 ? std::log(cdf) : std::log(1.0 - cdf);
  }
  return ll;
}

ScoreHessian score_and_hessian(const Eigen::VectorXd& beta, const Design& design,
                               const LinkFunction& link) {
  validate_beta(beta, design);
  const Eigen::Index k = design.k();
  const Eigen::Index p = design.p();
  const Eigen::Index d = design.d();
  const Eigen::VectorXd u = linear_predictor(beta, design);

  ScoreHessian out;
  out.gradient = Eigen::VectorXd::Zero(k);
  out.hessian = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd z(k);
  z(0) = 1.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (p > 0) z.segment(1, p) = design.w.row(i);
    if (d > 0) z.segment(1 + p, d) = design.f.row(i);
    const LDerivs ld = l_derivs(u(i), design.y(i), link);
    out.gradient += ld.l1 * z;
    out.hessian.selfadjointView<Eigen::Lower>().rankUpdate(z, ld.l2);
  }
  out.hessian = out.hessian.selfadjointView<Eigen::Lower>();
  return out;
}

BinaryFarFit fit(const Design& design, const LinkFunction& link, const FitOptions& opts) {
  const Eigen::Index n = design.rows();
  const Eigen::Index k = design.k();
  if (n <= k) throw std::invalid_argument("need more observations than coefficients");
  bool has_zero = false, has_one = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double yi = design.y(i);
    if (yi != 0.0 && yi != 1.0) throw std::invalid_argument("y must contain only 0 and 1");
    (yi > 0.5 ? has_one : has_zero) = true;
  }
  if (!has_zero || !has_one) {
    throw DegenerateOutcomeError("outcome vector is constant; cannot fit a binary model");
  }
  if ((design.p() > 0 && !design.w.allFinite()) || (design.d() > 0 && !design.f.allFinite())) {
    throw std::invalid_argument("design contains non-finite regressors");
  }

  BinaryFarFit result;
  result.link = link;
  result.beta = Eigen::VectorXd::Zero(k);
  double ll = log_likelihood(result.beta, design, link);
  result.loglik_trace.push_back(ll);

  constexpr int kMaxHalvings = 30;
  constexpr double kRidge = 1e-10;
  constexpr double kSeparationImprove = 1e-10;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    const ScoreHessian sh = score_and_hessian(result.beta, design, link);
    const double gnorm = sh.gradient.lpNorm<Eigen::Infinity>();
    result.gradient_norm = gnorm;
    if (gnorm < opts.tol) {
      result.converged = true;
      break;
    }

    // Solve the Newton system on the (positive semidefinite) negated Hessian.
    Eigen::MatrixXd info = -sh.hessian;
    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success) {
      info.diagonal().array() += kRidge;
      llt.compute(info);
      if (llt.info() != Eigen::Success) {
        throw SingularDesignError("Hessian is singular beyond the ridge fallback");
      }
    }
    const Eigen::VectorXd direction = llt.solve(sh.gradient);

    double step = 1.0;
    double ll_new = ll;
    Eigen::VectorXd candidate;
    bool improved = false;
    for (int halving = 0; halving < kMaxHalvings; ++halving) {
      candidate = result.beta + step * direction;
      ll_new = log_likelihood(candidate, design, link);
      if (ll_new > ll) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      result.converged = false;
      break;
    }

    const double rel_improve = (ll_new - ll) / std::max(1.0, std::abs(ll));
    result.beta = candidate;
    ll = ll_new;
    result.iterations = iter + 1;
    result.loglik_trace.push_back(ll);

    if (result.beta.lpNorm<Eigen::Infinity>() > opts.beta_cap &&
        rel_improve > kSeparationImprove) {
      throw SeparationError("coefficients exceed the cap with the likelihood still improving; "
                            "data are perfectly separated");
    }
  }

  result.loglik = ll;
  if (!result.converged) {
    // Refresh the exit gradient when the loop ran out of iterations.
    result.gradient_norm =
        score_and_hessian(result.beta, design, link).gradient.lpNorm<Eigen::Infinity>();
    result.converged = result.gradient_norm < opts.tol;
  }
  return result;
}

double predict_proba(const BinaryFarFit& fit, const Eigen::VectorXd& w_new,
                     const Eigen::VectorXd& f_new) {
  if (!fit.converged) throw std::invalid_argument("cannot predict from a non-converged fit");
  if (1 + w_new.size() + f_new.size() != fit.beta.size()) {
    throw std::invalid_argument("regressor lengths do not match the fitted coefficient vector");
  }
  double u = fit.beta(0);
  if (w_new.size() > 0) u += w_new.dot(fit.beta.segment(1, w_new.size()));
  if (f_new.size() > 0) u += f_new.dot(fit.beta.segment(1 + w_new.size(), f_new.size()));
  return fit.link.cdf_clamped(u);
}

Eigen::VectorXd fitted_probabilities(const BinaryFarFit& fit, const Design& design) {
  const Eigen::VectorXd u = linear_predictor(fit.beta, design);
  Eigen::VectorXd p(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) p(i) = fit.link.cdf_clamped(u(i));
  return p;
}

double intercept_only_loglik(const Eigen::VectorXd& y) {
  const double n = static_cast<double>(y.size());
  const double m = y.sum();
  if (m <= 0.0 || m >= n) {
    throw DegenerateOutcomeError("outcome vector is constant; intercept-only MLE undefined");
  }
  const double rate = m / n;
  return m * std::log(rate) + (n - m) * std::log(1.0 - rate);
}

}  // namespace binfar
