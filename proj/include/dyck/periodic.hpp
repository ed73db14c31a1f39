#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "dyck/core.hpp"
#include "dyck/observable.hpp"

namespace dyck {

// A length-n word spells a period-n point iff its square has nonzero monoid
// value; the sign of H_n splits those points into three classes.
enum class multiplier_class { negative, positive, neutral };

inline constexpr std::uint64_t default_work_budget = 100'000'000;

// True iff w repeated forever stays legal, i.e. reduce(w w) != 0.
bool is_periodic_admissible(const word& w);

// Class of an admissible word by the sign of H_n: > 0 negative, < 0 positive,
// = 0 neutral.  Throws invalid_input when w is empty or inadmissible.
multiplier_class classify(const word& w);

struct periodic_census {
  int M = 0;
  int n = 0;
  std::uint64_t total = 0;
  std::uint64_t negative = 0;
  std::uint64_t positive = 0;
  std::uint64_t neutral = 0;
};

struct enumeration_options {
  std::optional<multiplier_class> class_filter{};
  int workers = 1;
  std::uint64_t budget = default_work_budget;
};

// Refuses when (M+1)^n exceeds the budget (compared in log form).
void check_work_budget(int M, int n, std::uint64_t budget);

// Visits every admissible length-n word exactly once, in token order
// (a1 < ... < aM < b1 < ... < bM, leftmost letter most significant).
// Workers > 1 split the search by first letter; the visit order does not
// change.
void for_each_periodic(int M, int n, const enumeration_options& opts,
                       const std::function<void(const word&)>& sink);

periodic_census census(int M, int n, int workers = 1,
                       std::uint64_t budget = default_work_budget);

// Lower-level visitor for aggregations: shards run concurrently (one shard
// per first letter, ascending word order inside each), so the visitor must
// keep per-shard state and merge it afterwards.
void for_each_periodic_sharded(
    int M, int n, int workers, std::uint64_t budget,
    const std::function<void(int shard, const word&, multiplier_class)>& visit);

// Average of f over one period of w^inf.
double birkhoff_average(const word& w, const observable& f);

struct cylinder_distribution {
  int depth = 1;
  std::map<word, double> freq;  // lexicographic block order, entries sum to 1
};

// Frequencies of the n cyclic depth-k blocks of w.
cylinder_distribution empirical_cylinders(const word& w, int k);

}  // namespace dyck
