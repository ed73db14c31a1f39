#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dyck {

// The alphabet has M opening brackets a1..aM and M closing brackets b1..bM.
// Tokens sort a1 < a2 < ... < aM < b1 < ... < bM.
enum class bracket : std::uint8_t { open, close };

// The two collapsed shifts keep one family's indices and forget the other's:
// alpha keeps the M opening letters, beta the M closing letters.
enum class shift_family { alpha, beta };

struct symbol {
  bracket kind;
  int index;  // 1..M

  friend auto operator<=>(const symbol&, const symbol&) = default;
};

using word = std::vector<symbol>;

inline symbol open_sym(int index) { return {bracket::open, index}; }
inline symbol close_sym(int index) { return {bracket::close, index}; }

// Rank of a symbol in token order, 0..2M-1.
inline int symbol_rank(symbol s, int M) {
  return s.kind == bracket::open ? s.index - 1 : M + s.index - 1;
}
inline symbol symbol_from_rank(int rank, int M) {
  return rank < M ? open_sym(rank + 1) : close_sym(rank - M + 1);
}

// Value of a word in the bracket monoid: either the zero element or a
// canonical pair (unmatched closing indices, unmatched opening indices).
// Every nonzero product rewrites to all closes followed by all opens;
// both lists empty means the unit.
class reduced_form {
 public:
  reduced_form() = default;  // unit
  reduced_form(std::vector<int> closes, std::vector<int> opens)
      : closes_(std::move(closes)), opens_(std::move(opens)) {}

  static reduced_form zero() {
    reduced_form r;
    r.zero_ = true;
    return r;
  }
  static reduced_form unit() { return reduced_form(); }

  bool is_zero() const { return zero_; }
  bool is_unit() const { return !zero_ && closes_.empty() && opens_.empty(); }

  // Unmatched closing indices in word order, then unmatched opening indices.
  const std::vector<int>& closes() const { return closes_; }
  const std::vector<int>& opens() const { return opens_; }

  friend bool operator==(const reduced_form&, const reduced_form&) = default;

 private:
  bool zero_ = false;
  std::vector<int> closes_;
  std::vector<int> opens_;
};

// Monoid value of a word, single left-to-right pass.
reduced_form reduce(const word& w);

// Product of two already-reduced values.
reduced_form reduced_concat(const reduced_form& a, const reduced_form& b);

// Partial-sum profile H_0..H_n with H_0 = 0; an opening bracket steps +1,
// a closing bracket -1.
std::vector<int> height_profile(const word& w);

// H_n alone: #opens - #closes.
int net_height(const word& w);

// Token syntax: whitespace-separated a<k> / b<k>, 1 <= k <= M.
// Throws invalid_input on anything else.
word parse_word(std::string_view text, int M);

std::string format_symbol(symbol s);
std::string format_word(const word& w);

// Printable form of a monoid value: "0", "1", or the canonical word.
std::string format_reduced(const reduced_form& r);

void check_alphabet_size(int M);  // throws invalid_input unless M >= 2

}  // namespace dyck
