#include "dyck/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dyck/errors.hpp"

namespace dyck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRayleighTol = 1e-14;
constexpr int kPowerBudget = 100000;
constexpr double kSlopeTolScale = 1e-10;
constexpr double kMaxBracket = 2000.0;
// The certificate must survive solver noise: demand a clear margin below 1/2
// instead of letting a boundary case flip on the last bit of the slope solve.
constexpr double kCertMargin = 1e-9;

struct pattern_graph {
  int k;    // block depth
  int dim;  // number of states

  explicit pattern_graph(int depth) : k(depth), dim(depth == 1 ? 2 : 1 << (depth - 1)) {}

  int next(int p, int bit) const { return k == 1 ? bit : ((p << 1) | bit) & (dim - 1); }
  int block(int p, int bit) const { return k == 1 ? bit : (p << 1) | bit; }
};

int multiplicity(shift_family fam, int M, int bit) {
  // bit 0 = open pattern letter, bit 1 = close.
  bool indexed = (fam == shift_family::alpha) == (bit == 0);
  return indexed ? M : 1;
}

void require_factored(const observable& f) {
  if (!f.is_factored())
    throw invalid_input("pressure machinery needs a factored observable");
}

void require_positive_weights(const observable& f, double c0) {
  if (!(f.min_value() + c0 > 0))
    throw invalid_input("weight shift c0 must make every block weight positive");
}

struct perron_data {
  double rho;
  std::vector<double> left, right;
};

std::vector<double> power_vector(const dense_matrix& B, double boost, bool transpose,
                                 double* rho_out) {
  const int d = B.dim;
  std::vector<double> v(d, 1.0 / d), next(d);
  double rayleigh = 0.0;
  for (int it = 0; it < kPowerBudget; ++it) {
    for (int i = 0; i < d; ++i) {
      double acc = boost * v[i];
      for (int j = 0; j < d; ++j) acc += (transpose ? B.at(j, i) : B.at(i, j)) * v[j];
      next[i] = acc;
    }
    double dot = 0.0, norm2 = 0.0, sum = 0.0;
    for (int i = 0; i < d; ++i) {
      dot += next[i] * v[i];
      norm2 += v[i] * v[i];
      sum += next[i];
    }
    double r = dot / norm2;
    if (!(sum > 0.0) || !std::isfinite(r))
      throw numeric_error("power iteration degenerated");
    for (int i = 0; i < d; ++i) v[i] = next[i] / sum;
    if (it > 0 && std::abs(r - rayleigh) < kRayleighTol * std::max(1.0, std::abs(r))) {
      *rho_out = r - boost;
      return v;
    }
    rayleigh = r;
  }
  throw numeric_error("power iteration did not converge within " +
                      std::to_string(kPowerBudget) + " steps");
}

perron_data perron(const dense_matrix& B) {
  double boost = *std::max_element(B.a.begin(), B.a.end());
  if (!(boost > 0)) throw numeric_error("transfer matrix vanished");
  perron_data out;
  double rho_l = 0.0;
  out.right = power_vector(B, boost, false, &out.rho);
  out.left = power_vector(B, boost, true, &rho_l);
  if (!(out.rho > 0)) throw numeric_error("spectral radius underflowed");
  return out;
}

struct transfer_analysis {
  double P;
  double slope;
  double collapsed_mass;
};

// Builds the lumped matrix with block weights shifted by w0 so that every
// entry stays in [0, M] no matter how large |s| grows, then reads pressure,
// slope and the stationary mass of the anonymous letter off the Perron data.
transfer_analysis analyze_transfer(shift_family fam, int M, const observable& f,
                                   double c0, double s) {
  require_factored(f);
  require_positive_weights(f, c0);
  check_alphabet_size(M);

  const pattern_graph g(f.depth());
  const int nblocks = 1 << g.k;
  std::vector<double> w(nblocks);
  for (int b = 0; b < nblocks; ++b) w[b] = f.pattern_value(unsigned(b)) + c0;
  const double w0 = s >= 0 ? *std::max_element(w.begin(), w.end())
                           : *std::min_element(w.begin(), w.end());

  dense_matrix B(g.dim);
  for (int p = 0; p < g.dim; ++p)
    for (int bit = 0; bit < 2; ++bit)
      B.at(p, g.next(p, bit)) +=
          multiplicity(fam, M, bit) * std::exp(s * (w[g.block(p, bit)] - w0));

  perron_data pd = perron(B);
  double uv = 0.0;
  for (int i = 0; i < g.dim; ++i) uv += pd.left[i] * pd.right[i];

  double flux = 0.0;
  for (int p = 0; p < g.dim; ++p)
    for (int bit = 0; bit < 2; ++bit) {
      int q = g.next(p, bit);
      flux += pd.left[p] * w[g.block(p, bit)] * B.at(p, q) * pd.right[q];
    }

  const int anon_bit = fam == shift_family::alpha ? 1 : 0;
  double mass = 0.0;
  for (int q = 0; q < g.dim; ++q)
    if ((q & 1) == anon_bit) mass += pd.left[q] * pd.right[q];

  transfer_analysis out;
  out.P = s * w0 + std::log(pd.rho);
  out.slope = flux / (pd.rho * uv);
  out.collapsed_mass = mass / uv;
  return out;
}

// Karp's minimum cycle mean on the pattern graph.
double min_cycle_mean(const pattern_graph& g, const std::vector<double>& w, bool negate) {
  const int V = g.dim;
  std::vector<std::vector<double>> D(V + 1, std::vector<double>(V, kInf));
  D[0][0] = 0.0;
  for (int t = 1; t <= V; ++t)
    for (int p = 0; p < V; ++p) {
      if (D[t - 1][p] == kInf) continue;
      for (int bit = 0; bit < 2; ++bit) {
        double edge = negate ? -w[g.block(p, bit)] : w[g.block(p, bit)];
        int q = g.next(p, bit);
        D[t][q] = std::min(D[t][q], D[t - 1][p] + edge);
      }
    }
  double best = kInf;
  for (int v = 0; v < V; ++v) {
    if (D[V][v] == kInf) continue;
    double worst = -kInf;
    for (int t = 0; t < V; ++t) {
      if (D[t][v] == kInf) continue;
      worst = std::max(worst, (D[V][v] - D[t][v]) / (V - t));
    }
    best = std::min(best, worst);
  }
  if (best == kInf) throw numeric_error("cycle mean search found no cycle");
  return negate ? -best : best;
}

}  // namespace

double spectral_radius(const dense_matrix& B) { return perron(B).rho; }

dense_matrix transfer_matrix(shift_family fam, int M, const observable& f, double c0,
                             double s) {
  require_factored(f);
  check_alphabet_size(M);
  const pattern_graph g(f.depth());
  dense_matrix B(g.dim);
  for (int p = 0; p < g.dim; ++p)
    for (int bit = 0; bit < 2; ++bit)
      B.at(p, g.next(p, bit)) +=
          multiplicity(fam, M, bit) *
          std::exp(s * (f.pattern_value(unsigned(g.block(p, bit))) + c0));
  return B;
}

pressure_point pressure(shift_family fam, int M, const observable& f, double c0,
                        double s) {
  transfer_analysis ta = analyze_transfer(fam, M, f, c0, s);
  return {ta.P, ta.slope};
}

observable_range cycle_mean_range(const observable& f) {
  require_factored(f);
  const pattern_graph g(f.depth());
  const int nblocks = 1 << g.k;
  std::vector<double> w(nblocks);
  for (int b = 0; b < nblocks; ++b) w[b] = f.pattern_value(unsigned(b));
  return {min_cycle_mean(g, w, false), min_cycle_mean(g, w, true)};
}

double solve_s(shift_family fam, int M, const observable& f, double c0, double t) {
  require_positive_weights(f, c0);
  observable_range rng = cycle_mean_range(f);
  if (!(t > rng.lo && t < rng.hi))
    throw invalid_input("t=" + std::to_string(t) + " outside the open interval (" +
                        std::to_string(rng.lo) + ", " + std::to_string(rng.hi) + ")");
  const double target = t + c0;
  const double tol = kSlopeTolScale * (1.0 + std::abs(target));
  auto g = [&](double s) { return analyze_transfer(fam, M, f, c0, s).slope - target; };

  double lo = 0.0, hi = 0.0;
  double glo = g(0.0);
  if (std::abs(glo) <= tol) return 0.0;
  double ghi = glo;
  if (glo < 0) {
    for (double step = 1.0;; step *= 2) {
      hi = step;
      ghi = g(hi);
      if (ghi > 0) break;
      if (std::abs(ghi) <= tol) return hi;
      if (hi > kMaxBracket)
        throw numeric_error("slope target not bracketed within |s| <= 2000");
    }
  } else {
    ghi = glo;
    hi = 0.0;
    for (double step = 1.0;; step *= 2) {
      lo = -step;
      glo = g(lo);
      if (glo < 0) break;
      if (std::abs(glo) <= tol) return lo;
      if (-lo > kMaxBracket)
        throw numeric_error("slope target not bracketed within |s| <= 2000");
    }
  }

  // Bisection with a secant candidate when it lands safely inside.
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (ghi > glo) {
      double sec = lo - glo * (hi - lo) / (ghi - glo);
      double margin = 0.01 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin) mid = sec;
    }
    double gm = g(mid);
    if (std::abs(gm) <= tol) return mid;
    if (gm < 0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  throw numeric_error("slope solve did not reach tolerance");
}

spectrum_point spectrum(shift_family fam, int M, const observable& f, double c0,
                        double t) {
  spectrum_point sp;
  sp.t = t;
  sp.s = solve_s(fam, M, f, c0, t);
  transfer_analysis ta = analyze_transfer(fam, M, f, c0, sp.s);
  sp.b = ta.P / (t + c0) - sp.s;
  sp.gibbs_minority_mass = ta.collapsed_mass;
  sp.in_U = ta.collapsed_mass < 0.5 - kCertMargin;
  return sp;
}

rate_value rate_level1(shift_family fam, int M, const observable& f, double c0,
                       double t) {
  require_positive_weights(f, c0);
  observable_range rng = cycle_mean_range(f);
  if (t < rng.lo || t > rng.hi) return {kInf, true};

  const double span = rng.hi - rng.lo;
  if (!(span > 0)) {
    // Constant averages: the rate is 0 at the single admissible point.
    return {t == rng.lo ? 0.0 : kInf, true};
  }
  // Endpoint values are limits; evaluate a hair inside the open interval.
  const double margin = 1e-9 * span;
  const double teff = std::clamp(t, rng.lo + margin, rng.hi - margin);
  spectrum_point sp = spectrum(fam, M, f, c0, teff);
  double value = std::log(double(M) + 1.0) - (teff + c0) * sp.b;
  return {value, sp.in_U};
}

double rate_min(int M, const observable& f, double c0, double t) {
  return std::min(rate_level1(shift_family::alpha, M, f, c0, t).value,
                  rate_level1(shift_family::beta, M, f, c0, t).value);
}

double rate_closed_form_indicator(int M, double t) {
  check_alphabet_size(M);
  if (t < 0 || t > 1) return kInf;
  auto xlogx = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
  double base = xlogx(t) + xlogx(1.0 - t) + std::log(double(M) + 1.0);
  double skew = t <= 0.5 ? 1.0 - t : t;
  return base - skew * std::log(double(M));
}

double default_weight_shift(const observable& f) {
  return std::max(1.0, 1.0 - f.min_value());
}

rate_curve compute_rate_curve(int M, const observable& f, double c0,
                              const std::vector<double>& grid) {
  rate_curve rc;
  rc.M = M;
  rc.c0 = c0;
  rc.domain = cycle_mean_range(f);
  rc.samples.reserve(grid.size());
  for (double t : grid) {
    rate_sample sm;
    sm.t = t;
    sm.alpha = rate_level1(shift_family::alpha, M, f, c0, t);
    sm.beta = rate_level1(shift_family::beta, M, f, c0, t);
    sm.min_value = std::min(sm.alpha.value, sm.beta.value);
    rc.samples.push_back(sm);
  }
  return rc;
}

}  // namespace dyck
