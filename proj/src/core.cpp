#include "dyck/core.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "dyck/errors.hpp"

namespace dyck {

reduced_form reduce(const word& w) {
  std::vector<int> closes, opens;
  for (const symbol& s : w) {
    if (s.kind == bracket::open) {
      opens.push_back(s.index);
    } else if (!opens.empty()) {
      if (opens.back() != s.index) return reduced_form::zero();
      opens.pop_back();
    } else {
      closes.push_back(s.index);
    }
  }
  return reduced_form(std::move(closes), std::move(opens));
}

reduced_form reduced_concat(const reduced_form& a, const reduced_form& b) {
  if (a.is_zero() || b.is_zero()) return reduced_form::zero();
  // Opens left over from a meet closes of b innermost-first.
  std::vector<int> opens = a.opens();
  std::size_t i = 0;
  while (!opens.empty() && i < b.closes().size()) {
    if (opens.back() != b.closes()[i]) return reduced_form::zero();
    opens.pop_back();
    ++i;
  }
  std::vector<int> closes = a.closes();
  closes.insert(closes.end(), b.closes().begin() + i, b.closes().end());
  opens.insert(opens.end(), b.opens().begin(), b.opens().end());
  return reduced_form(std::move(closes), std::move(opens));
}

std::vector<int> height_profile(const word& w) {
  std::vector<int> h(w.size() + 1);
  h[0] = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    h[i + 1] = h[i] + (w[i].kind == bracket::open ? 1 : -1);
  return h;
}

int net_height(const word& w) {
  int h = 0;
  for (const symbol& s : w) h += s.kind == bracket::open ? 1 : -1;
  return h;
}

void check_alphabet_size(int M) {
  if (M < 2) throw invalid_input("alphabet size must be at least 2, got " + std::to_string(M));
}

word parse_word(std::string_view text, int M) {
  check_alphabet_size(M);
  word w;
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

    if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'b'))
      throw invalid_input("bad token '" + std::string(tok) + "'");
    int index = 0;
    auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), index);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw invalid_input("bad token '" + std::string(tok) + "'");
    if (index < 1 || index > M)
      throw invalid_input("token '" + std::string(tok) + "' out of range for M=" +
                          std::to_string(M));
    w.push_back({tok[0] == 'a' ? bracket::open : bracket::close, index});
  }
  return w;
}

std::string format_symbol(symbol s) {
  return (s.kind == bracket::open ? "a" : "b") + std::to_string(s.index);
}

std::string format_word(const word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_symbol(w[i]);
  }
  return out;
}

std::string format_reduced(const reduced_form& r) {
  if (r.is_zero()) return "0";
  if (r.is_unit()) return "1";
  word w;
  for (int k : r.closes()) w.push_back(close_sym(k));
  for (int k : r.opens()) w.push_back(open_sym(k));
  return format_word(w);
}

}  // namespace dyck
