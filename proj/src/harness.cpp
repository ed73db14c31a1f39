#include "dyck/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "dyck/errors.hpp"

namespace dyck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_scope(ensemble_scope scope, multiplier_class c) {
  switch (scope) {
    case ensemble_scope::all: return true;
    case ensemble_scope::alpha_and_neutral: return c != multiplier_class::positive;
    case ensemble_scope::beta: return c == multiplier_class::positive;
  }
  return false;
}

// Bins with edges on multiples of the width.  Floating division can land a
// value one bin off its labeled edges, so indices are nudged until the value
// sits inside [edge(i), edge(i+1)) and finally clamped into the admissible
// range, whose top bin is closed.
struct binning {
  double width = 0.05;
  long lo_bin = 0, hi_bin = 0;

  double edge(long i) const { return double(i) * width; }
  std::size_t size() const { return std::size_t(hi_bin - lo_bin + 1); }

  static binning make(double lo, double hi, double width) {
    if (!(width > 0)) throw invalid_input("bin width must be positive");
    binning b;
    b.width = width;
    b.lo_bin = b.raw_index(lo);
    long top = b.raw_index(hi);
    if (b.edge(top) == hi && top > b.lo_bin) --top;  // range top on an edge: close the bin below
    b.hi_bin = std::max(top, b.lo_bin);
    return b;
  }

  long raw_index(double x) const {
    long i = long(std::floor(x / width));
    while (x < edge(i)) --i;
    while (x >= edge(i + 1)) ++i;
    return i;
  }

  std::size_t slot(double x) const {
    long i = std::clamp(raw_index(x), lo_bin, hi_bin);
    return std::size_t(i - lo_bin);
  }
};

}  // namespace

std::vector<level1_row> run_level1(const experiment_config& cfg) {
  observable_range rng = cycle_mean_range(cfg.f);
  binning bins = binning::make(rng.lo, rng.hi, cfg.bin_width);

  // The analytic curve does not depend on n; take the bin infima once.
  std::vector<double> analytic(bins.size(), kInf);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    double lo = bins.edge(bins.lo_bin + long(b));
    double hi = bins.edge(bins.lo_bin + long(b) + 1);
    for (int j = 0; j <= 11; ++j) {
      double t = lo + (hi - lo) * j / 11.0;
      analytic[b] = std::min(analytic[b], rate_min(cfg.M, cfg.f, cfg.c0, t));
    }
  }

  std::vector<level1_row> rows;
  for (int n : cfg.periods) {
    std::vector<std::vector<std::uint64_t>> counts(std::size_t(2) * cfg.M,
                                                   std::vector<std::uint64_t>(bins.size(), 0));
    std::vector<std::uint64_t> totals(std::size_t(2) * cfg.M, 0);
    for_each_periodic_sharded(
        cfg.M, n, cfg.workers, cfg.budget,
        [&](int shard, const word& w, multiplier_class c) {
          if (!in_scope(cfg.scope, c)) return;
          ++counts[shard][bins.slot(birkhoff_average(w, cfg.f))];
          ++totals[shard];
        });

    std::uint64_t total = 0;
    for (std::uint64_t t : totals) total += t;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      std::uint64_t count = 0;
      for (const auto& part : counts) count += part[b];
      level1_row row;
      row.n = n;
      row.bin_lo = bins.edge(bins.lo_bin + long(b));
      row.bin_hi = bins.edge(bins.lo_bin + long(b) + 1);
      row.count = count;
      row.total = total;
      row.emp_rate = count == 0 ? kInf
                                : (std::log(double(total)) - std::log(double(count))) / n;
      row.analytic_inf = analytic[b];
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<level2_row> run_level2_concentration(const experiment_config& cfg) {
  std::vector<level2_row> rows;
  const double target = 1.0 / (cfg.M + 1.0);
  for (int n : cfg.periods) {
    std::vector<std::vector<std::uint64_t>> letters(
        std::size_t(2) * cfg.M, std::vector<std::uint64_t>(std::size_t(4) * cfg.M, 0));
    std::vector<std::uint64_t> sizes(std::size_t(4) * cfg.M, 0);  // per shard x class
    for_each_periodic_sharded(
        cfg.M, n, cfg.workers, cfg.budget,
        [&](int shard, const word& w, multiplier_class c) {
          if (c == multiplier_class::neutral) return;
          int cls = c == multiplier_class::negative ? 0 : 1;
          auto& mine = letters[shard];
          for (const symbol& s : w) ++mine[std::size_t(cls) * 2 * cfg.M + symbol_rank(s, cfg.M)];
          ++sizes[std::size_t(shard) * 2 + cls];
        });

    for (int cls = 0; cls < 2; ++cls) {
      std::vector<std::uint64_t> letter_totals(std::size_t(2) * cfg.M, 0);
      std::uint64_t size = 0;
      for (int shard = 0; shard < 2 * cfg.M; ++shard) {
        size += sizes[std::size_t(shard) * 2 + cls];
        for (int r = 0; r < 2 * cfg.M; ++r)
          letter_totals[r] += letters[shard][std::size_t(cls) * 2 * cfg.M + r];
      }
      const double denom = size ? double(size) * n : 1.0;
      auto freq = [&](int r) { return double(letter_totals[r]) / denom; };

      // Aggregate the anonymous family, keep the indexed one per letter.
      const bool alpha = cls == 0;
      double agg = 0.0;
      for (int r = 0; r < cfg.M; ++r) agg += freq(alpha ? cfg.M + r : r);
      double l1 = std::abs(agg - target);
      for (int r = 0; r < cfg.M; ++r)
        l1 += std::abs(freq(alpha ? r : cfg.M + r) - target);

      auto push = [&](const std::string& sym, double f) {
        level2_row row;
        row.n = n;
        row.cls = alpha ? shift_family::alpha : shift_family::beta;
        row.symbol = sym;
        row.mean_freq = f;
        row.target = target;
        row.l1_total = l1;
        rows.push_back(row);
      };
      if (alpha) {
        for (int r = 0; r < cfg.M; ++r) push("a" + std::to_string(r + 1), freq(r));
        push("b", agg);
      } else {
        push("a", agg);
        for (int r = 0; r < cfg.M; ++r) push("b" + std::to_string(r + 1), freq(cfg.M + r));
      }
    }
  }
  return rows;
}

std::vector<neutral_row> run_neutral_decay(int M, int n_max, int workers,
                                           std::uint64_t budget) {
  check_alphabet_size(M);
  const double limit = std::log(2.0 * std::sqrt(double(M)));
  std::vector<neutral_row> rows;
  for (int n = 2; n <= n_max; n += 2) {
    periodic_census c = census(M, n, workers, budget);
    neutral_row row;
    row.n = n;
    row.rate = c.neutral ? std::log(double(c.neutral)) / n : -kInf;
    row.limit = limit;
    row.gap = limit - row.rate;
    rows.push_back(row);
  }
  return rows;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_census_csv(std::ostream& out, const std::vector<periodic_census>& rows) {
  out << "M,n,total,negative,positive,neutral\n";
  for (const auto& r : rows)
    out << r.M << ',' << r.n << ',' << r.total << ',' << r.negative << ',' << r.positive
        << ',' << r.neutral << '\n';
}

void write_level1_csv(std::ostream& out, const std::vector<level1_row>& rows) {
  out << "n,bin_lo,bin_hi,count,total,emp_rate,analytic_inf\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_real(r.bin_lo) << ',' << format_real(r.bin_hi) << ','
        << r.count << ',' << r.total << ',';
    if (r.count > 0) out << format_real(r.emp_rate);
    out << ',' << format_real(r.analytic_inf) << '\n';
  }
}

void write_level2_csv(std::ostream& out, const std::vector<level2_row>& rows) {
  out << "n,class,symbol,mean_freq,target,l1_total\n";
  for (const auto& r : rows)
    out << r.n << ',' << (r.cls == shift_family::alpha ? "alpha" : "beta") << ','
        << r.symbol << ',' << format_real(r.mean_freq) << ',' << format_real(r.target)
        << ',' << format_real(r.l1_total) << '\n';
}

void write_neutral_csv(std::ostream& out, const std::vector<neutral_row>& rows) {
  out << "n,rate,limit,gap\n";
  for (const auto& r : rows)
    out << r.n << ',' << format_real(r.rate) << ',' << format_real(r.limit) << ','
        << format_real(r.gap) << '\n';
}

void write_rate_csv(std::ostream& out, const rate_curve& rc) {
  out << "t,I,I_alpha,I_beta,in_U_alpha,in_U_beta,branch\n";
  for (const auto& s : rc.samples) {
    const char* branch = s.alpha.value < s.beta.value   ? "alpha"
                         : s.beta.value < s.alpha.value ? "beta"
                                                        : "both";
    out << format_real(s.t) << ',' << format_real(s.min_value) << ','
        << format_real(s.alpha.value) << ',' << format_real(s.beta.value) << ','
        << (s.alpha.certified ? 1 : 0) << ',' << (s.beta.certified ? 1 : 0) << ','
        << branch << '\n';
  }
}

void write_pressure_csv(std::ostream& out, const std::vector<pressure_sample>& rows) {
  out << "s,P,Pprime\n";
  for (const auto& r : rows)
    out << format_real(r.s) << ',' << format_real(r.p.value) << ','
        << format_real(r.p.slope) << '\n';
}

namespace {

struct plot_frame {
  double x0, x1, y0, y1;              // data ranges
  double px0 = 70, px1 = 690, py0 = 440, py1 = 30;  // pixel box, y flipped

  double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
  double py(double y) const { return py0 + (y - y0) / (y1 - y0) * (py1 - py0); }
};

void svg_coord(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  out << buf;
}

void svg_label(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  out << buf;
}

}  // namespace

void write_rate_svg(std::ostream& out, const rate_curve& rc,
                    const std::vector<level1_row>& empirical) {
  plot_frame fr{rc.domain.lo, rc.domain.hi, 0.0, 0.0};
  if (!(fr.x1 > fr.x0)) {
    fr.x0 -= 0.5;
    fr.x1 += 0.5;
  }
  double ymax = 0.0;
  for (const auto& s : rc.samples)
    if (std::isfinite(s.min_value)) ymax = std::max(ymax, s.min_value);
  for (const auto& r : empirical)
    if (r.count > 0 && std::isfinite(r.emp_rate)) ymax = std::max(ymax, r.emp_rate);
  if (!(ymax > 0)) ymax = 1.0;
  fr.y1 = ymax * 1.08;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"500\" "
         "viewBox=\"0 0 760 500\">\n";
  out << "<rect x=\"70\" y=\"30\" width=\"620\" height=\"410\" fill=\"white\" "
         "stroke=\"black\"/>\n";

  // Ticks: five divisions on each axis.
  for (int i = 0; i <= 5; ++i) {
    double x = fr.x0 + (fr.x1 - fr.x0) * i / 5.0;
    double y = fr.y0 + (fr.y1 - fr.y0) * i / 5.0;
    out << "<line x1=\"";
    svg_coord(out, fr.px(x));
    out << "\" y1=\"440\" x2=\"";
    svg_coord(out, fr.px(x));
    out << "\" y2=\"446\" stroke=\"black\"/>\n";
    out << "<text x=\"";
    svg_coord(out, fr.px(x));
    out << "\" y=\"462\" font-size=\"11\" text-anchor=\"middle\">";
    svg_label(out, x);
    out << "</text>\n";
    out << "<line x1=\"64\" y1=\"";
    svg_coord(out, fr.py(y));
    out << "\" x2=\"70\" y2=\"";
    svg_coord(out, fr.py(y));
    out << "\" stroke=\"black\"/>\n";
    out << "<text x=\"58\" y=\"";
    svg_coord(out, fr.py(y) + 4);
    out << "\" font-size=\"11\" text-anchor=\"end\">";
    svg_label(out, y);
    out << "</text>\n";
  }

  // Analytic curve, split wherever the value is infinite.
  bool open_poly = false;
  for (const auto& s : rc.samples) {
    if (!std::isfinite(s.min_value)) {
      if (open_poly) out << "\"/>\n";
      open_poly = false;
      continue;
    }
    if (!open_poly) {
      out << "<polyline fill=\"none\" stroke=\"#1a55a0\" stroke-width=\"1.5\" points=\"";
      open_poly = true;
    } else {
      out << ' ';
    }
    svg_coord(out, fr.px(s.t));
    out << ',';
    svg_coord(out, fr.py(s.min_value));
  }
  if (open_poly) out << "\"/>\n";

  for (const auto& r : empirical) {
    if (r.count == 0 || !std::isfinite(r.emp_rate)) continue;
    double mid = 0.5 * (r.bin_lo + r.bin_hi);
    out << "<circle cx=\"";
    svg_coord(out, fr.px(mid));
    out << "\" cy=\"";
    svg_coord(out, fr.py(r.emp_rate));
    out << "\" r=\"3\" fill=\"#c23b22\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace dyck
