#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dyck/core.hpp"

namespace dyck {

// Real-valued function of k consecutive letters.  A factored observable only
// looks at the open/close pattern of its block, so one table of size 2^k
// covers every alphabet size; a full observable distinguishes all 2M letters
// and is tied to a specific M.
class observable {
 public:
  static observable indicator_close();  // depth 1, 1 on closing brackets

  // table indexed by the block's open/close bits, first letter most
  // significant, open = 0.  Size must be 2^depth.
  static observable factored(int depth, std::vector<double> table);

  // table indexed base 2M by symbol rank, first letter most significant.
  // Size must be (2M)^depth.
  static observable full(int M, int depth, std::vector<double> table);

  // Table file: one line per block, `"<tokens over {a,b}>" <value>`.
  // Blocks must share one depth and cover all 2^depth patterns.
  static observable load_factored(std::istream& in);

  int depth() const { return depth_; }
  bool is_factored() const { return factored_; }
  int alphabet_size() const { return M_; }  // 0 when factored

  // Value on the block of depth() letters starting at w[start], wrapping
  // around the end of w.
  double evaluate_cyclic(const word& w, std::size_t start) const;

  // Factored lookup by pattern bits.
  double pattern_value(unsigned bits) const { return table_[bits]; }

  double min_value() const;
  double max_value() const;

 private:
  observable(int M, int depth, bool fact, std::vector<double> table)
      : M_(M), depth_(depth), factored_(fact), table_(std::move(table)) {}

  int M_ = 0;
  int depth_ = 1;
  bool factored_ = true;
  std::vector<double> table_;
};

}  // namespace dyck
