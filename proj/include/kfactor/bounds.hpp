#pragma once

#include <boost/rational.hpp>
#include <vector>

namespace kfactor {

using Rational = boost::rational<long long>;

Rational phi(int s);
double phi_value(int s);
double p_s(long long n, int s);

long long binom_ll(int n, int k);
double log_binom(double n, double k);

// Exponent of n in n^s p_s^{binom(s+1,2)-1}; zero for every s >= 3.
Rational nps_exponent(int s);
double nps_value(long long n, int s);

struct JansonReport {
  double mu = 0.0;
  double delta_bar = 0.0;
  double exponent_bound = 0.0;
};

JansonReport expected_ks_count(long long n_sub, double p, int s);

// One F_{i,j} term: pairs sharing i vertices, j of them on the G' edge.
// value = delta^delta_pow g^g_pow n^n_pow p^p_pow.
struct MomentTerm {
  int i = 0, j = 0;
  int g_pow = 0, n_pow = 0, p_pow = 0, delta_pow = 0;
  double value = 0.0;
  // Exponent of n in term / g once p = C p_s(n) and g <= n.
  Rational growth;
};

struct HarvestMoments {
  JansonReport report;
  double p = 0.0;
  double W = 0.0;
  double kappa = 0.0;
  long long d0 = 0, a = 0, b = 0, d = 0;
  std::vector<MomentTerm> terms;
};

// delta is the max-degree constant of the cherry bound.
HarvestMoments harvest_moments(long long n, long long g, int s, double C,
                               double delta = 0.1);

inline constexpr double kDivbConstant = 1.0 / 64.0;
double divb_bound(long long n, double nu, int s, double C);

}  // namespace kfactor
