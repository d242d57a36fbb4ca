#include "kfactor/bounds.hpp"

#include <cmath>

#include "kfactor/errors.hpp"

namespace kfactor {

Rational phi(int s) {
  if (s < 2) throw DomainError("phi(s) needs s >= 2");
  return Rational(2LL * s, static_cast<long long>(s - 1) * (s + 2));
}

double phi_value(int s) { return boost::rational_cast<double>(phi(s)); }

double p_s(long long n, int s) {
  if (n < 3) throw DomainError("p_s needs n >= 3");
  if (s < 2) throw DomainError("p_s needs s >= 2");
  double ln = std::log(static_cast<double>(n));
  if (s == 2) return ln / static_cast<double>(n);
  return std::exp(-phi_value(s) * ln);
}

long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double log_binom(double n, double k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

Rational nps_exponent(int s) {
  if (s < 3) throw DomainError("the identity concerns s >= 3");
  return Rational(s) - phi(s) * Rational(binom_ll(s + 1, 2) - 1);
}

double nps_value(long long n, int s) {
  double p = p_s(n, s);
  return std::pow(static_cast<double>(n), s) *
         std::pow(p, static_cast<double>(binom_ll(s + 1, 2) - 1));
}

JansonReport expected_ks_count(long long n_sub, double p, int s) {
  if (s < 2 || n_sub < s) throw DomainError("expected_ks_count needs n_sub >= s >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0,1]");
  double lp = std::log(p);
  double es = static_cast<double>(binom_ll(s, 2));
  double nn = static_cast<double>(n_sub);
  JansonReport r;
  r.mu = std::exp(log_binom(nn, s) + es * lp);
  double db = 0.0;
  for (int i = 2; i <= s - 1; ++i) {
    double lt = log_binom(nn, s) + log_binom(s, i) + log_binom(nn - s, s - i) +
                (2 * es - static_cast<double>(binom_ll(i, 2))) * lp;
    db += std::exp(lt);
  }
  r.delta_bar = db;
  r.exponent_bound = r.mu * r.mu / (8.0 * (r.mu + r.delta_bar));
  return r;
}

HarvestMoments harvest_moments(long long n, long long g, int s, double C,
                               double delta) {
  if (s < 2 || n < 3 || g < 1 || C <= 0.0) throw DomainError("bad harvest parameters");
  HarvestMoments h;
  h.p = std::min(1.0, C * p_s(n, s));
  h.a = h.b = n / 3;
  h.d = n - 2 * (n / 3);
  h.d0 = (g + 4) / 5;
  int M = static_cast<int>(binom_ll(s + 1, 2));
  h.W = static_cast<double>(h.a) * h.d0 * std::exp(log_binom(static_cast<double>(h.d), s - 1));
  h.kappa = h.W / (static_cast<double>(g) * std::pow(static_cast<double>(n), s));
  h.report.mu = h.W * std::pow(h.p, M - 1);
  Rational ph = phi(s);
  double db = 0.0;
  for (int i = 1; i <= s; ++i)
    for (int j = 0; j <= std::min(i, 2); ++j) {
      MomentTerm t;
      t.i = i;
      t.j = j;
      int ci = static_cast<int>(binom_ll(i, 2));
      if (j == 0) {
        t.g_pow = 2;
        t.n_pow = 2 * s - i;
        t.p_pow = 2 * M - 2 - ci;
      } else if (j == 1) {
        t.delta_pow = 1;
        t.g_pow = 1;
        t.n_pow = 2 * s - i + 1;
        t.p_pow = 2 * M - 2 - ci;
      } else {
        t.g_pow = 1;
        t.n_pow = 2 * s - i + 1;
        t.p_pow = 2 * M - 1 - ci;
      }
      t.value = std::pow(delta, t.delta_pow) * std::pow(static_cast<double>(g), t.g_pow) *
                std::pow(static_cast<double>(n), t.n_pow) * std::pow(h.p, t.p_pow);
      t.growth = Rational(t.g_pow - 1 + t.n_pow) - ph * Rational(t.p_pow);
      db += t.value;
      h.terms.push_back(t);
    }
  h.report.delta_bar = db;
  h.report.exponent_bound =
      h.report.mu * h.report.mu / (8.0 * (h.report.mu + h.report.delta_bar));
  return h;
}

double divb_bound(long long n, double nu, int s, double C) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw DomainError("nu must lie in [0,1]");
  double nn = static_cast<double>(n);
  return kDivbConstant * nu * nu * nn * nn * (C * p_s(n, s));
}

}  // namespace kfactor
