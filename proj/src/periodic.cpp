#include "dyck/periodic.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "dyck/errors.hpp"

namespace dyck {

bool is_periodic_admissible(const word& w) {
  if (w.empty()) throw invalid_input("period must be at least 1");
  reduced_form r = reduce(w);
  return !reduced_concat(r, r).is_zero();
}

multiplier_class classify(const word& w) {
  if (!is_periodic_admissible(w))
    throw invalid_input("word does not spell a periodic point: " + format_word(w));
  int h = net_height(w);
  if (h > 0) return multiplier_class::negative;
  if (h < 0) return multiplier_class::positive;
  return multiplier_class::neutral;
}

void check_work_budget(int M, int n, std::uint64_t budget) {
  if (budget == 0 || n * std::log(double(M) + 1.0) > std::log(double(budget)))
    throw budget_error("enumeration of (M+1)^n = (" + std::to_string(M + 1) + ")^" +
                       std::to_string(n) + " states exceeds work budget " +
                       std::to_string(budget));
}

namespace {

// Depth-first search over words with a fixed first letter.  The running
// monoid value is kept as the (closes, opens) pair; a prefix that hits zero
// never recovers, so the branch is cut there.  A completed word survives iff
// its leftover opens cancel against its own leading closes.
struct shard_search {
  int M, n;
  word w;
  std::vector<int> closes, opens;
  const std::function<void(const word&, multiplier_class)>* leaf;

  void run(symbol first) {
    w.assign(1, first);
    w.reserve(n);
    closes.clear();
    opens.clear();
    (first.kind == bracket::open ? opens : closes).push_back(first.index);
    extend();
  }

  void extend() {
    if ((int)w.size() == n) {
      finish();
      return;
    }
    for (int r = 0; r < 2 * M; ++r) {
      symbol s = symbol_from_rank(r, M);
      if (s.kind == bracket::open) {
        opens.push_back(s.index);
        w.push_back(s);
        extend();
        w.pop_back();
        opens.pop_back();
      } else if (!opens.empty()) {
        if (opens.back() != s.index) continue;  // zero, prune
        int saved = opens.back();
        opens.pop_back();
        w.push_back(s);
        extend();
        w.pop_back();
        opens.push_back(saved);
      } else {
        closes.push_back(s.index);
        w.push_back(s);
        extend();
        w.pop_back();
        closes.pop_back();
      }
    }
  }

  void finish() {
    std::size_t m = std::min(opens.size(), closes.size());
    for (std::size_t i = 0; i < m; ++i)
      if (opens[opens.size() - 1 - i] != closes[i]) return;
    int h = int(opens.size()) - int(closes.size());
    multiplier_class c = h > 0   ? multiplier_class::negative
                         : h < 0 ? multiplier_class::positive
                                 : multiplier_class::neutral;
    (*leaf)(w, c);
  }
};

void run_shards(int shards, int workers,
                const std::function<void(int)>& fn) {
  if (workers <= 1) {
    for (int i = 0; i < shards; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  int nthreads = std::min(workers, shards);
  std::vector<std::exception_ptr> errors(nthreads);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next.fetch_add(1); i < shards; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void validate_enumeration_args(int M, int n, std::uint64_t budget) {
  check_alphabet_size(M);
  if (n < 1) throw invalid_input("period must be at least 1, got " + std::to_string(n));
  check_work_budget(M, n, budget);
}

}  // namespace

void for_each_periodic(int M, int n, const enumeration_options& opts,
                       const std::function<void(const word&)>& sink) {
  validate_enumeration_args(M, n, opts.budget);
  auto wanted = [&](multiplier_class c) {
    return !opts.class_filter || *opts.class_filter == c;
  };

  if (opts.workers <= 1) {
    std::function<void(const word&, multiplier_class)> leaf =
        [&](const word& w, multiplier_class c) {
          if (wanted(c)) sink(w);
        };
    shard_search s{M, n, {}, {}, {}, &leaf};
    for (int r = 0; r < 2 * M; ++r) s.run(symbol_from_rank(r, M));
    return;
  }

  // Parallel shards buffer their hits; emission happens afterwards in shard
  // order, so the stream is identical to the single-worker one.
  std::vector<std::vector<symbol>> buffers(2 * M);
  run_shards(2 * M, opts.workers, [&](int r) {
    std::vector<symbol>& buf = buffers[r];
    std::function<void(const word&, multiplier_class)> leaf =
        [&](const word& w, multiplier_class c) {
          if (wanted(c)) buf.insert(buf.end(), w.begin(), w.end());
        };
    shard_search s{M, n, {}, {}, {}, &leaf};
    s.run(symbol_from_rank(r, M));
  });
  word w(n, open_sym(1));
  for (const auto& buf : buffers)
    for (std::size_t i = 0; i + n <= buf.size(); i += n) {
      std::copy(buf.begin() + i, buf.begin() + i + n, w.begin());
      sink(w);
    }
}

void for_each_periodic_sharded(
    int M, int n, int workers, std::uint64_t budget,
    const std::function<void(int shard, const word&, multiplier_class)>& visit) {
  validate_enumeration_args(M, n, budget);
  run_shards(2 * M, workers, [&](int r) {
    std::function<void(const word&, multiplier_class)> leaf =
        [&](const word& w, multiplier_class c) { visit(r, w, c); };
    shard_search s{M, n, {}, {}, {}, &leaf};
    s.run(symbol_from_rank(r, M));
  });
}

periodic_census census(int M, int n, int workers, std::uint64_t budget) {
  validate_enumeration_args(M, n, budget);
  std::vector<periodic_census> parts(2 * M);
  run_shards(2 * M, workers, [&](int r) {
    periodic_census& part = parts[r];
    std::function<void(const word&, multiplier_class)> leaf =
        [&](const word&, multiplier_class c) {
          ++part.total;
          switch (c) {
            case multiplier_class::negative: ++part.negative; break;
            case multiplier_class::positive: ++part.positive; break;
            case multiplier_class::neutral: ++part.neutral; break;
          }
        };
    shard_search s{M, n, {}, {}, {}, &leaf};
    s.run(symbol_from_rank(r, M));
  });
  periodic_census out;
  out.M = M;
  out.n = n;
  for (const auto& p : parts) {
    out.total += p.total;
    out.negative += p.negative;
    out.positive += p.positive;
    out.neutral += p.neutral;
  }
  return out;
}

double birkhoff_average(const word& w, const observable& f) {
  if (w.empty()) throw invalid_input("cannot average over an empty word");
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += f.evaluate_cyclic(w, i);
  return sum / double(w.size());
}

cylinder_distribution empirical_cylinders(const word& w, int k) {
  if (w.empty()) throw invalid_input("cannot take cylinders of an empty word");
  if (k < 1) throw invalid_input("cylinder depth must be positive");
  std::map<word, std::uint64_t> counts;
  word block(k, open_sym(1));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (int j = 0; j < k; ++j) block[j] = w[(i + j) % w.size()];
    ++counts[block];
  }
  cylinder_distribution dist;
  dist.depth = k;
  for (const auto& [b, c] : counts) dist.freq[b] = double(c) / double(w.size());
  return dist;
}

}  // namespace dyck
