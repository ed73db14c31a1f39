#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dyck/periodic.hpp"
#include "dyck/thermo.hpp"

namespace dyck {

// Which multiplier classes an experiment averages over.
enum class ensemble_scope { all, alpha_and_neutral, beta };

struct experiment_config {
  int M = 2;
  std::vector<int> periods;  // which n to run
  observable f = observable::indicator_close();
  double c0 = 1.0;
  double bin_width = 0.05;
  ensemble_scope scope = ensemble_scope::all;
  int workers = 1;
  std::uint64_t budget = default_work_budget;
};

// One histogram bin of Birkhoff averages at one period.  Bin edges sit on
// multiples of bin_width; every bin is half-open except the last, which
// closes at the top of the admissible range.
struct level1_row {
  int n = 0;
  double bin_lo = 0, bin_hi = 0;
  std::uint64_t count = 0, total = 0;
  double emp_rate = 0;      // (log total - log count)/n, +inf for empty bins
  double analytic_inf = 0;  // inf of the analytic rate over the bin
};

std::vector<level1_row> run_level1(const experiment_config& cfg);

// Mean letter frequencies of one multiplier class against the flat profile
// that the class concentrates on: each indexed letter 1/(M+1) and the whole
// opposite family together 1/(M+1).
struct level2_row {
  int n = 0;
  shift_family cls = shift_family::alpha;
  std::string symbol;  // "a1".."aM" and aggregate "b" for alpha; mirrored for beta
  double mean_freq = 0;
  double target = 0;
  double l1_total = 0;  // l1 distance of the whole vector, repeated per row
};

std::vector<level2_row> run_level2_concentration(const experiment_config& cfg);

// Exponential thinning of the neutral class: (1/n) log #Per_{0,n} against its
// limit log(2 sqrt(M)).  Odd periods have no neutral words and are skipped.
struct neutral_row {
  int n = 0;
  double rate = 0;
  double limit = 0;
  double gap = 0;  // limit - rate
};

std::vector<neutral_row> run_neutral_decay(int M, int n_max, int workers = 1,
                                           std::uint64_t budget = default_work_budget);

// CSV emission.  All reals print with 17 significant digits; infinities print
// as "inf" except the empty-bin emp_rate, whose field stays empty.
std::string format_real(double x);
void write_census_csv(std::ostream& out, const std::vector<periodic_census>& rows);
void write_level1_csv(std::ostream& out, const std::vector<level1_row>& rows);
void write_level2_csv(std::ostream& out, const std::vector<level2_row>& rows);
void write_neutral_csv(std::ostream& out, const std::vector<neutral_row>& rows);
void write_rate_csv(std::ostream& out, const rate_curve& rc);

struct pressure_sample {
  double s = 0;
  pressure_point p{};
};
void write_pressure_csv(std::ostream& out, const std::vector<pressure_sample>& rows);

// Rate curve with empirical points overlaid, as a standalone SVG.
void write_rate_svg(std::ostream& out, const rate_curve& rc,
                    const std::vector<level1_row>& empirical);

}  // namespace dyck
