#include "dyck/krieger.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

#include "dyck/errors.hpp"

namespace dyck {

namespace {

bool is_up_step(const collapsed_word& y, int i) {
  // Indexed letters of family alpha are opens; for beta the anonymous letter is.
  return y.fam == shift_family::alpha ? y.letters[i] > 0 : y.letters[i] == 0;
}

// H_0..H_n of the collapsed word, +1 on opens, -1 on closes.
std::vector<int> collapsed_heights(const collapsed_word& y) {
  std::vector<int> h(y.letters.size() + 1, 0);
  for (std::size_t i = 0; i < y.letters.size(); ++i)
    h[i + 1] = h[i] + (is_up_step(y, int(i)) ? 1 : -1);
  return h;
}

// Height of the periodic extension at any integer coordinate.
long long height_at(const std::vector<int>& h, long long j) {
  long long n = (long long)h.size() - 1;
  long long q = j >= 0 ? j / n : -((-j + n - 1) / n);
  return h[j - q * n] + q * h[n];
}

// Steps worth scanning before a missing level is provably missing: the
// profile shifts by H_n every period, so range/|H_n| + 2 periods pass any
// reachable level; for a driftless profile one period already repeats.
long long scan_bound(const std::vector<int>& h) {
  long long n = (long long)h.size() - 1;
  int lo = h[0], hi = h[0];
  for (int v : h) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  long long drift = std::abs((long long)h[(std::size_t)n]);
  long long periods = (hi - lo + std::max(drift, 1LL) - 1) / std::max(drift, 1LL) + 2;
  return periods * n;
}

// Largest j <= i with H_j == level, or nothing within the scan bound.
std::optional<long long> match_left(const std::vector<int>& h, long long i, long long level) {
  for (long long j = i, stop = i - scan_bound(h); j >= stop; --j)
    if (height_at(h, j) == level) return j;
  return std::nullopt;
}

// Smallest j >= i with H_j == level, or nothing within the scan bound.
std::optional<long long> match_right(const std::vector<int>& h, long long i, long long level) {
  for (long long j = i, stop = i + scan_bound(h); j <= stop; ++j)
    if (height_at(h, j) == level) return j;
  return std::nullopt;
}

long long floor_mod(long long j, long long n) {
  long long r = j % n;
  return r < 0 ? r + n : r;
}

void require_family(const collapsed_word& y, shift_family fam, const char* op) {
  if (y.fam != fam)
    throw invalid_input(std::string(op) + " expects a word over the other collapsed alphabet");
  if (y.letters.empty()) throw invalid_input(std::string(op) + " needs a nonempty word");
}

}  // namespace

collapsed_word parse_collapsed(std::string_view text, int M, shift_family fam) {
  check_alphabet_size(M);
  const char indexed = fam == shift_family::alpha ? 'a' : 'b';
  const char anonymous = fam == shift_family::alpha ? 'b' : 'a';
  collapsed_word y;
  y.fam = fam;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view tok = text.substr(pos, end - pos);
    pos = end;

    if (tok.size() == 1 && tok[0] == anonymous) {
      y.letters.push_back(0);
      continue;
    }
    if (tok.size() >= 2 && tok[0] == indexed) {
      int index = 0;
      auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), index);
      if (ec == std::errc() && p == tok.data() + tok.size() && index >= 1 && index <= M) {
        y.letters.push_back(index);
        continue;
      }
    }
    throw invalid_input("bad collapsed token '" + std::string(tok) + "'");
  }
  return y;
}

std::string format_collapsed(const collapsed_word& y) {
  const char indexed = y.fam == shift_family::alpha ? 'a' : 'b';
  const char anonymous = y.fam == shift_family::alpha ? 'b' : 'a';
  std::string out;
  for (std::size_t i = 0; i < y.letters.size(); ++i) {
    if (i) out += ' ';
    if (y.letters[i] == 0)
      out += anonymous;
    else
      out += indexed + std::to_string(y.letters[i]);
  }
  return out;
}

collapsed_word phi_alpha(const word& w) {
  collapsed_word y;
  y.fam = shift_family::alpha;
  y.letters.reserve(w.size());
  for (const symbol& s : w) y.letters.push_back(s.kind == bracket::open ? s.index : 0);
  return y;
}

collapsed_word phi_beta(const word& w) {
  collapsed_word y;
  y.fam = shift_family::beta;
  y.letters.reserve(w.size());
  for (const symbol& s : w) y.letters.push_back(s.kind == bracket::close ? s.index : 0);
  return y;
}

word psi_alpha_periodic(const collapsed_word& y) {
  require_family(y, shift_family::alpha, "index recovery over opens");
  const long long n = (long long)y.letters.size();
  std::vector<int> h = collapsed_heights(y);
  if (h[n] < 0)
    throw invalid_input("closes outnumber opens over the period; some close has no match");
  word out(y.letters.size(), open_sym(1));
  for (long long i = 0; i < n; ++i) {
    if (y.letters[i] > 0) {
      out[i] = open_sym(y.letters[i]);
      continue;
    }
    auto j = match_left(h, i, height_at(h, i + 1));
    if (!j)
      throw invalid_input("anonymous close at position " + std::to_string(i) +
                          " has no matching open");
    int partner = y.letters[floor_mod(*j, n)];
    if (partner == 0)
      throw invalid_input("match of close at position " + std::to_string(i) +
                          " is not an open");
    out[i] = close_sym(partner);
  }
  return out;
}

word psi_beta_periodic(const collapsed_word& y) {
  require_family(y, shift_family::beta, "index recovery over closes");
  const long long n = (long long)y.letters.size();
  std::vector<int> h = collapsed_heights(y);
  if (h[n] > 0)
    throw invalid_input("opens outnumber closes over the period; some open has no match");
  word out(y.letters.size(), close_sym(1));
  for (long long i = 0; i < n; ++i) {
    if (y.letters[i] > 0) {
      out[i] = close_sym(y.letters[i]);
      continue;
    }
    // The open at i is cancelled by the close one step before the profile
    // first returns to its pre-open level.
    auto j = match_right(h, i + 1, height_at(h, i));
    if (!j)
      throw invalid_input("anonymous open at position " + std::to_string(i) +
                          " has no matching close");
    int partner = y.letters[floor_mod(*j - 1, n)];
    if (partner == 0)
      throw invalid_input("match of open at position " + std::to_string(i) +
                          " is not a close");
    out[i] = open_sym(partner);
  }
  return out;
}

bool in_B_alpha_periodic(const word& w) {
  if (w.empty()) throw invalid_input("membership needs a nonempty word");
  std::vector<int> h = height_profile(w);
  for (long long i = 0; i < (long long)w.size(); ++i)
    if (w[i].kind == bracket::close && !match_left(h, i, height_at(h, i + 1)))
      return false;
  return true;
}

bool in_B_beta_periodic(const word& w) {
  if (w.empty()) throw invalid_input("membership needs a nonempty word");
  std::vector<int> h = height_profile(w);
  for (long long i = 0; i < (long long)w.size(); ++i)
    if (w[i].kind == bracket::open && !match_right(h, i + 1, height_at(h, i)))
      return false;
  return true;
}

witness_pair extension_witness(int M, int N, int k1, int k2) {
  check_alphabet_size(M);
  if (N < 1) throw invalid_input("agreement radius must be at least 1");
  if (k1 < 1 || k1 > M || k2 < 1 || k2 > M)
    throw invalid_input("witness indices must lie in 1..M");
  if (k1 == k2) throw invalid_input("witness indices must differ");

  witness_pair wp;
  wp.N = N;
  wp.lo = -(2 * N + 1);
  wp.hi = N;
  const int len = wp.hi - wp.lo + 1;

  auto build_window = [&](int k) {
    collapsed_word y;
    y.fam = shift_family::alpha;
    y.letters.assign(len, 0);
    for (int c = wp.lo; c <= wp.hi; ++c) {
      if (c < -N)
        y.letters[c - wp.lo] = k;  // far-left opens carry the hidden index
      else if (c <= 0)
        y.letters[c - wp.lo] = 0;  // central run of anonymous closes
      else
        y.letters[c - wp.lo] = 1;  // right padding a1
    }
    return y;
  };

  // Recover indices inside the finite window; every close of this shape
  // matches within it, the one at coordinate 0 all the way back at lo.
  auto recover = [&](const collapsed_word& y) {
    std::vector<int> h(len + 1, 0);
    for (int p = 0; p < len; ++p) h[p + 1] = h[p] + (y.letters[p] > 0 ? 1 : -1);
    word img(len, open_sym(1));
    for (int p = 0; p < len; ++p) {
      if (y.letters[p] > 0) {
        img[p] = open_sym(y.letters[p]);
        continue;
      }
      int level = h[p + 1];
      int q = -1;
      for (int j = p; j >= 0; --j)
        if (h[j] == level) {
          q = j;
          break;
        }
      if (q < 0 || y.letters[q] == 0)
        throw numeric_error("witness window failed to match its own closes");
      img[p] = close_sym(y.letters[q]);
    }
    return img;
  };

  wp.window1 = build_window(k1);
  wp.window2 = build_window(k2);
  wp.image1 = recover(wp.window1);
  wp.image2 = recover(wp.window2);
  wp.mismatch_at = 0;
  return wp;
}

}  // namespace dyck
