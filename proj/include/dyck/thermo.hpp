#pragma once

#include <vector>

#include "dyck/core.hpp"
#include "dyck/observable.hpp"

namespace dyck {

struct dense_matrix {
  int dim = 0;
  std::vector<double> a;  // row major

  explicit dense_matrix(int d = 0) : dim(d), a(std::size_t(d) * d, 0.0) {}
  double& at(int i, int j) { return a[std::size_t(i) * dim + j]; }
  double at(int i, int j) const { return a[std::size_t(i) * dim + j]; }
};

// Perron root of a nonnegative matrix by power iteration (diagonal-boosted so
// periodic supports converge too).  Throws numeric_error if the iteration
// budget runs out or the root degenerates.
double spectral_radius(const dense_matrix& B);

// Weighted transition matrix of the collapsed (M+1)-letter shift, lumped over
// open/close patterns: states are the 2^(k-1) patterns of the last k-1
// letters (two letter states when k = 1), an edge appends one letter and
// weighs exp(s * (f(block) + c0)) times the number of concrete letters
// realizing the appended pattern letter (M for the indexed family, 1 for the
// anonymous one).  Needs a factored f.
dense_matrix transfer_matrix(shift_family fam, int M, const observable& f,
                             double c0, double s);

struct pressure_point {
  double value;  // log of the Perron root
  double slope;  // d/ds, computed from the Perron eigenvectors
};

pressure_point pressure(shift_family fam, int M, const observable& f, double c0,
                        double s);

// Closure of the possible growth rates of Birkhoff averages: the extreme
// cycle means of f over the sliding-block graph.  These are also the limits
// of the pressure slope at s -> -inf / +inf (shifted by c0).
struct observable_range {
  double lo, hi;
};
observable_range cycle_mean_range(const observable& f);

// The s with pressure slope t + c0, for t strictly inside the admissible
// interval.  Bracketing plus interpolation; |slope - (t+c0)| <= 1e-10*(1+|t+c0|).
double solve_s(shift_family fam, int M, const observable& f, double c0, double t);

struct spectrum_point {
  double t = 0;
  double s = 0;                  // solve_s(t)
  double b = 0;                  // P(s)/(t+c0) - s
  double gibbs_minority_mass = 0;  // equilibrium-state mass of the anonymous letter
  bool in_U = false;  // mass clearly below 1/2 certifies the rate value
};

spectrum_point spectrum(shift_family fam, int M, const observable& f, double c0,
                        double t);

struct rate_value {
  double value = 0;      // +inf outside the admissible interval
  bool certified = false;  // true when in_U (or trivially, outside the interval)
};

// Level-1 rate of one branch: log(M+1) - (t+c0) * b(t).  Values at the
// interval endpoints are continuous extensions (evaluated a hair inside).
rate_value rate_level1(shift_family fam, int M, const observable& f, double c0,
                       double t);

// Lower of the two branch values; this is the full rate function wherever
// both branches are certified.
double rate_min(int M, const observable& f, double c0, double t);

// Closed form for the close-count frequency: t log t + (1-t) log(1-t)
// + log(M+1) minus (1-t) log M on [0, 1/2] and t log M on (1/2, 1];
// +inf outside [0, 1].
double rate_closed_form_indicator(int M, double t);

// Default weight shift making every block weight >= 1: max(1, 1 - min f).
double default_weight_shift(const observable& f);

struct rate_sample {
  double t = 0;
  rate_value alpha, beta;
  double min_value = 0;
};

struct rate_curve {
  int M = 2;
  double c0 = 1;
  observable_range domain{0, 0};
  std::vector<rate_sample> samples;
};

rate_curve compute_rate_curve(int M, const observable& f, double c0,
                              const std::vector<double>& grid);

}  // namespace dyck
