// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Tolerances and time limits are pinned here on purpose -- edit knowingly.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dyck/harness.hpp"
#include "dyck/krieger.hpp"
#include "dyck/periodic.hpp"
#include "dyck/thermo.hpp"
#include "oracles.hpp"

namespace {

using clock_type = std::chrono::steady_clock;
using dyck::multiplier_class;
using dyck::observable;
using dyck::shift_family;
using dyck::word;

int failures = 0;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(int idx, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

// ---- criterion 1: DFS census vs filtering all words through reduce ----

void criterion_1() {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 8 && ok; ++n) {
    dyck::periodic_census naive{2, n, 0, 0, 0, 0};
    oracle::for_all_words(2, n, [&](const word& w) {
      word power;
      for (int k = 1; k <= 2 * n; ++k) {
        power.insert(power.end(), w.begin(), w.end());
        if (dyck::reduce(power).is_zero()) return;
      }
      ++naive.total;
      int h = dyck::net_height(w);
      if (h > 0)
        ++naive.negative;
      else if (h < 0)
        ++naive.positive;
      else
        ++naive.neutral;
    });
    auto fast = dyck::census(2, n);
    if (fast.total != naive.total || fast.negative != naive.negative ||
        fast.positive != naive.positive || fast.neutral != naive.neutral) {
      ok = false;
      detail = " mismatch at n=" + std::to_string(n);
    }
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 60.0;
  report(1, ok, "census equals brute-force filtration, M=2, n<=8 (" + fmt_seconds(dt) + ")" + detail);
}

// ---- criterion 2: neutral counts in closed form up to n=12 ----

void criterion_2() {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string detail;
  for (int M : {2, 3}) {
    for (int n = 1; n <= 12 && ok; ++n) {
      std::uint64_t want = 0;
      if (n % 2 == 0) {
        want = oracle::binomial(n, n / 2);
        for (int i = 0; i < n / 2; ++i) want *= std::uint64_t(M);
      }
      std::uint64_t got = dyck::census(M, n, 4).neutral;
      if (got != want) {
        ok = false;
        detail = " M=" + std::to_string(M) + " n=" + std::to_string(n) + ": got " +
                 std::to_string(got) + ", want " + std::to_string(want);
      }
    }
  }
  report(2, ok,
         "neutral class counts C(n,n/2)*M^(n/2), M in {2,3}, n<=12 (" +
             fmt_seconds(seconds_since(t0)) + ")" + detail);
}

// ---- criterion 3: one-sided class growth pinched by 3^n ----

void criterion_3() {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string detail;
  for (int n = 8; n <= 12 && ok; ++n) {
    auto c = dyck::census(2, n, 4);
    std::uint64_t pow3 = 1;
    for (int i = 0; i < n; ++i) pow3 *= 3;
    if (!(3 * c.negative >= pow3 && c.negative < pow3 && c.negative == c.positive)) {
      ok = false;
      detail = " n=" + std::to_string(n) + ": negative=" + std::to_string(c.negative) +
               ", 3^n=" + std::to_string(pow3);
    }
  }
  report(3, ok,
         "3^n/3 <= #negative = #positive < 3^n, M=2, n in 8..12 (" +
             fmt_seconds(seconds_since(t0)) + ")" + detail);
}

// ---- criterion 4: round trips and injectivity of the collapse maps ----

void criterion_4() {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 10 && ok; ++n) {
    std::set<std::string> alpha_images;
    std::uint64_t alpha_domain = 0;
    dyck::for_each_periodic(2, n, {}, [&](const word& w) {
      if (!ok) return;
      auto cls = dyck::classify(w);
      if (cls != multiplier_class::positive) {
        ++alpha_domain;
        auto y = dyck::phi_alpha(w);
        alpha_images.insert(dyck::format_collapsed(y));
        if (dyck::psi_alpha_periodic(y) != w) {
          ok = false;
          detail = " alpha round trip broke at '" + dyck::format_word(w) + "'";
        }
      }
      if (cls != multiplier_class::negative &&
          dyck::psi_beta_periodic(dyck::phi_beta(w)) != w) {
        ok = false;
        detail = " beta round trip broke at '" + dyck::format_word(w) + "'";
      }
    });
    if (ok && alpha_images.size() != alpha_domain) {
      ok = false;
      detail = " phi_alpha not injective at n=" + std::to_string(n);
    }
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 120.0;
  report(4, ok,
         "psi o phi = id on the matching classes and phi_alpha injective, n<=10 (" +
             fmt_seconds(dt) + ")" + detail);
}

// ---- criterion 5: computed rate vs closed form for the close count ----

void criterion_5() {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string detail;
  const observable ind = observable::indicator_close();
  double worst = 0;
  for (int M : {2, 5}) {
    for (int i = 1; i <= 49 && ok; ++i) {
      if (i == 25) continue;
      double t = 0.02 * i;
      double gap = std::abs(dyck::rate_min(M, ind, 1.0, t) -
                            dyck::rate_closed_form_indicator(M, t));
      worst = std::max(worst, gap);
      if (!(gap <= 1e-8)) {
        ok = false;
        detail = " M=" + std::to_string(M) + " t=" + std::to_string(t) + " gap " +
                 std::to_string(gap);
      }
    }
    double kink = std::abs(dyck::rate_closed_form_indicator(M, 0.5) -
                           std::log((M + 1.0) / std::sqrt(4.0 * M)));
    if (!(kink <= 1e-12)) {
      ok = false;
      detail = " closed form off at the kink, M=" + std::to_string(M);
    }
  }
  char wbuf[32];
  std::snprintf(wbuf, sizeof wbuf, "%.2e", worst);
  report(5, ok,
         "rate matches closed form within 1e-8 off the kink, M in {2,5} (worst " +
             std::string(wbuf) + ", " + fmt_seconds(seconds_since(t0)) + ")" + detail);
}

// ---- criterion 6: weight shift drops out of the rate ----

void criterion_6() {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string detail;
  const observable ind = observable::indicator_close();
  for (int i = 1; i <= 49 && ok; ++i) {
    double t = 0.02 * i;
    double gap =
        std::abs(dyck::rate_min(2, ind, 1.0, t) - dyck::rate_min(2, ind, 2.0, t));
    if (!(gap <= 1e-8)) {
      ok = false;
      detail = " t=" + std::to_string(t) + " gap " + std::to_string(gap);
    }
  }
  report(6, ok,
         "rates with c0=1 and c0=2 agree within 1e-8 (" +
             fmt_seconds(seconds_since(t0)) + ")" + detail);
}

// ---- criterion 7: the kink has slopes +log M | -log M ----

void criterion_7() {
  bool ok = true;
  std::string detail;
  const double h = 1e-6;
  for (int M : {2, 5}) {
    double logM = std::log(double(M));
    double at = dyck::rate_closed_form_indicator(M, 0.5);
    double left = (at - dyck::rate_closed_form_indicator(M, 0.5 - h)) / h;
    double right = (dyck::rate_closed_form_indicator(M, 0.5 + h) - at) / h;
    if (!(std::abs(left - logM) <= 1e-4 && std::abs(right + logM) <= 1e-4 &&
          std::abs((left - right) - 2 * logM) <= 2e-4)) {
      ok = false;
      detail = " M=" + std::to_string(M) + " slopes " + std::to_string(left) + " / " +
               std::to_string(right);
    }
  }
  report(7, ok, "one-sided slopes at t=1/2 are +log M and -log M, gap 2 log M" + detail);
}

// ---- criterion 8: empirical histogram at n=12 tracks the analytic curve ----

bool bin_contains(const dyck::level1_row& r, double x, bool last) {
  return r.bin_lo <= x && (x < r.bin_hi || (last && x <= r.bin_hi));
}

void criterion_8() {
  auto t0 = clock_type::now();
  dyck::experiment_config cfg;
  cfg.periods = {12};
  cfg.bin_width = 0.05;
  cfg.workers = 4;
  auto rows = dyck::run_level1(cfg);

  bool ok = true;
  std::string detail;
  double worst = 0;
  for (const auto& r : rows) {
    if (r.count == 0) continue;
    if (!(r.bin_hi > 0.1 && r.bin_lo < 0.9)) continue;
    double gap = std::abs(r.emp_rate - r.analytic_inf);
    worst = std::max(worst, gap);
    if (!(gap <= 0.2)) {
      ok = false;
      detail = " bin [" + std::to_string(r.bin_lo) + "," + std::to_string(r.bin_hi) +
               ") off by " + std::to_string(gap);
    }
  }

  // the two deepest bins sit over the branch minima 1/3 and 2/3
  std::vector<const dyck::level1_row*> nonempty;
  for (const auto& r : rows)
    if (r.count > 0) nonempty.push_back(&r);
  std::sort(nonempty.begin(), nonempty.end(),
            [](auto* a, auto* b) { return a->emp_rate < b->emp_rate; });
  if (nonempty.size() < 2) {
    ok = false;
  } else {
    bool third = false, two_thirds = false;
    for (int i = 0; i < 2; ++i) {
      const auto& r = *nonempty[i];
      bool last = &r == &rows.back();
      third = third || bin_contains(r, 1.0 / 3, last);
      two_thirds = two_thirds || bin_contains(r, 2.0 / 3, last);
    }
    if (!(third && two_thirds)) {
      ok = false;
      detail += " deepest bins miss 1/3 or 2/3";
    }
  }

  double dt = seconds_since(t0);
  ok = ok && dt < 300.0;
  char wbuf[32];
  std::snprintf(wbuf, sizeof wbuf, "%.3f", worst);
  report(8, ok,
         "n=12 histogram within 0.2 of the analytic curve on (0.1,0.9), minima at "
         "1/3 and 2/3 (worst gap " +
             std::string(wbuf) + ", " + fmt_seconds(dt) + ")" + detail);
}

// ---- criterion 9: neutral thinning rate near its limit ----

void criterion_9() {
  auto t0 = clock_type::now();
  auto c = dyck::census(2, 12, 4);
  double rate = std::log(double(c.neutral)) / 12.0;
  double limit = std::log(2.0 * std::sqrt(2.0));
  double gap = std::abs(rate - limit);
  bool ok = c.neutral > 0 && gap <= 0.15;
  char buf[64];
  std::snprintf(buf, sizeof buf, "gap %.3f", gap);
  report(9, ok,
         "(1/12) log #neutral within 0.15 of log(2 sqrt 2) (" + std::string(buf) + ", " +
             fmt_seconds(seconds_since(t0)) + ")");
}

// ---- criterion 10: letter concentration of the one-sided classes ----

void criterion_10() {
  auto t0 = clock_type::now();
  dyck::experiment_config cfg;
  cfg.periods = {12};
  cfg.workers = 4;
  auto rows = dyck::run_level2_concentration(cfg);
  bool ok = rows.size() == 6;
  std::string detail;
  double worst = 0;
  for (const auto& r : rows) {
    double gap = std::abs(r.mean_freq - 1.0 / 3);
    worst = std::max(worst, gap);
    if (!(gap <= 0.05)) {
      ok = false;
      detail += " " + r.symbol + " off by " + std::to_string(gap);
    }
  }
  char wbuf[32];
  std::snprintf(wbuf, sizeof wbuf, "%.4f", worst);
  report(10, ok,
         "n=12 class letter frequencies within 0.05 of 1/3 (worst " + std::string(wbuf) +
             ", " + fmt_seconds(seconds_since(t0)) + ")" + detail);
}

// ---- criterion 11: witness pairs, verified by re-deriving the match ----

int window_index_at_zero(const dyck::collapsed_word& y, int lo) {
  // heights across the window, then the left match of the close at coord 0
  std::vector<int> h(y.letters.size() + 1, 0);
  for (std::size_t p = 0; p < y.letters.size(); ++p)
    h[p + 1] = h[p] + (y.letters[p] > 0 ? 1 : -1);
  int p0 = -lo;
  for (int j = p0; j >= 0; --j)
    if (h[j] == h[p0 + 1]) return y.letters[j];
  return -1;
}

void criterion_11() {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string detail;
  for (int N = 1; N <= 10 && ok; ++N) {
    auto wp = dyck::extension_witness(2, N, 1, 2);
    for (int c = -N; c <= N; ++c)
      if (wp.window1.letters[c - wp.lo] != wp.window2.letters[c - wp.lo]) {
        ok = false;
        detail = " windows differ inside the agreement zone, N=" + std::to_string(N);
      }
    int i1 = window_index_at_zero(wp.window1, wp.lo);
    int i2 = window_index_at_zero(wp.window2, wp.lo);
    if (!(i1 == 1 && i2 == 2 && wp.image1[-wp.lo] == dyck::close_sym(1) &&
          wp.image2[-wp.lo] == dyck::close_sym(2) && wp.mismatch_at == 0)) {
      ok = false;
      detail = " recovered indices wrong at N=" + std::to_string(N);
    }
  }
  report(11, ok,
         "witness windows agree on [-N,N] yet recover different indices at 0, N<=10 (" +
             fmt_seconds(seconds_since(t0)) + ")" + detail);
}

// ---- criterion 12: the shipped binary is deterministic across workers ----

std::string run_capture(const std::string& bin, const std::string& args, int* code) {
  namespace fs = std::filesystem;
  static int seq = 0;
  fs::path out = fs::temp_directory_path() /
                 ("dyck_acc_" + std::to_string(::getpid()) + "_" + std::to_string(seq++));
  std::string cmd = "\"" + bin + "\" " + args + " > " + out.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  fs::remove(out);
  return buf.str();
}

void criterion_12() {
  auto t0 = clock_type::now();
  const char* bin = std::getenv("DYCK_CLI");
  if (!bin || !*bin) {
    report(12, false, "DYCK_CLI not set; run through ctest so the binary path is known");
    return;
  }
  bool ok = true;
  std::string detail;
  const std::string cmds[] = {
      "census --M 2 --n-max 8",
      "rate --M 2 --grid 0.02:0.98:0.02",
      "empirical --M 2 --n 12 --bin-width 0.05",
  };
  for (const std::string& c : cmds) {
    int code1 = 0, code2 = 0;
    bool has_workers = c.rfind("rate", 0) != 0;
    std::string base =
        run_capture(bin, c + (has_workers ? " --workers 1" : ""), &code1);
    std::string again =
        run_capture(bin, c + (has_workers ? " --workers 4" : ""), &code2);
    if (code1 != 0 || code2 != 0 || base.empty() || base != again) {
      ok = false;
      detail = " outputs diverged for '" + c + "'";
    }
  }
  report(12, ok,
         "CLI reruns with --workers 4 are byte-identical (" +
             fmt_seconds(seconds_since(t0)) + ")" + detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
