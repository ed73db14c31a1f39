#include "dyck/observable.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "dyck/errors.hpp"

namespace dyck {

namespace {

std::size_t pow_size(std::size_t base, int exp) {
  std::size_t n = 1;
  for (int i = 0; i < exp; ++i) {
    if (n > (std::size_t{1} << 40) / base)
      throw invalid_input("observable table too large");
    n *= base;
  }
  return n;
}

}  // namespace

observable observable::indicator_close() { return factored(1, {0.0, 1.0}); }

observable observable::factored(int depth, std::vector<double> table) {
  if (depth < 1) throw invalid_input("observable depth must be positive");
  if (table.size() != pow_size(2, depth))
    throw invalid_input("factored table must have 2^depth entries");
  return observable(0, depth, true, std::move(table));
}

observable observable::full(int M, int depth, std::vector<double> table) {
  check_alphabet_size(M);
  if (depth < 1) throw invalid_input("observable depth must be positive");
  if (table.size() != pow_size(2 * std::size_t(M), depth))
    throw invalid_input("full table must have (2M)^depth entries");
  return observable(M, depth, false, std::move(table));
}

observable observable::load_factored(std::istream& in) {
  int depth = -1;
  std::vector<double> table;
  std::vector<bool> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "table line " + std::to_string(lineno);
    std::size_t p = line.find_first_not_of(" \t");
    if (p == std::string::npos || line[p] == '#') continue;
    if (line[p] != '"') throw invalid_input(where + ": expected quoted block");
    std::size_t q = line.find('"', p + 1);
    if (q == std::string::npos) throw invalid_input(where + ": unterminated quote");

    // Pattern tokens are bare 'a'/'b'.
    unsigned bits = 0;
    int k = 0;
    std::istringstream toks(line.substr(p + 1, q - p - 1));
    std::string tok;
    while (toks >> tok) {
      if (tok != "a" && tok != "b")
        throw invalid_input(where + ": bad pattern token '" + tok + "'");
      bits = (bits << 1) | (tok == "b" ? 1u : 0u);
      ++k;
    }
    if (k == 0) throw invalid_input(where + ": empty block");
    if (k > 20) throw invalid_input(where + ": block depth above 20 not supported");
    if (depth == -1) {
      depth = k;
      table.assign(std::size_t{1} << depth, 0.0);
      seen.assign(std::size_t{1} << depth, false);
    } else if (k != depth) {
      throw invalid_input(where + ": depth " + std::to_string(k) +
                          " differs from earlier depth " + std::to_string(depth));
    }

    std::istringstream rest(line.substr(q + 1));
    double value;
    if (!(rest >> value) || !std::isfinite(value))
      throw invalid_input(where + ": missing or non-finite value");
    std::string extra;
    if (rest >> extra) throw invalid_input(where + ": trailing junk '" + extra + "'");
    if (seen[bits]) throw invalid_input(where + ": duplicate block");
    seen[bits] = true;
    table[bits] = value;
  }
  if (depth == -1) throw invalid_input("observable table is empty");
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw invalid_input("observable table misses " +
                          std::to_string(std::count(seen.begin(), seen.end(), false)) +
                          " of " + std::to_string(seen.size()) + " blocks");
  return factored(depth, std::move(table));
}

double observable::evaluate_cyclic(const word& w, std::size_t start) const {
  if (w.empty()) throw invalid_input("cannot evaluate observable on an empty word");
  if (!factored_) {
    for (const symbol& s : w)
      if (s.index < 1 || s.index > M_)
        throw invalid_input("word uses indices outside the observable's alphabet");
  }
  std::size_t idx = 0;
  for (int j = 0; j < depth_; ++j) {
    const symbol& s = w[(start + j) % w.size()];
    if (factored_)
      idx = (idx << 1) | (s.kind == bracket::close ? 1u : 0u);
    else
      idx = idx * (2 * M_) + symbol_rank(s, M_);
  }
  return table_[idx];
}

double observable::min_value() const {
  return *std::min_element(table_.begin(), table_.end());
}

double observable::max_value() const {
  return *std::max_element(table_.begin(), table_.end());
}

}  // namespace dyck
