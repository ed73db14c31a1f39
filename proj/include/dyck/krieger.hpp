#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dyck/core.hpp"

namespace dyck {

// Word over one of the two collapsed alphabets.  For family alpha the letters
// are a1..aM plus a single anonymous close written `b`; for beta they are
// b1..bM plus an anonymous open written `a`.  letters[i] holds the index of
// an indexed letter (1..M) or 0 for the anonymous one.
struct collapsed_word {
  shift_family fam = shift_family::alpha;
  std::vector<int> letters;

  friend bool operator==(const collapsed_word&, const collapsed_word&) = default;
};

collapsed_word parse_collapsed(std::string_view text, int M, shift_family fam);
std::string format_collapsed(const collapsed_word& y);

// Forget the indices of the closes (resp. opens).
collapsed_word phi_alpha(const word& w);
collapsed_word phi_beta(const word& w);

// Recover the forgotten indices on the periodic extension y^inf: an anonymous
// close takes the index of the open it cancels, found as the nearest position
// to its left where the height profile returns to the same level; mirrored
// for anonymous opens, which look right.  Throws invalid_input when some
// anonymous letter has no match (for alpha that is exactly when closes
// outnumber opens over the period, for beta the reverse).
word psi_alpha_periodic(const collapsed_word& y);
word psi_beta_periodic(const collapsed_word& y);

// True iff every close (resp. open) of w^inf finds its height match looking
// left (resp. right).  The scan distance is bounded by how fast the profile
// drifts per period, so a missing match is detected, not searched forever.
bool in_B_alpha_periodic(const word& w);
bool in_B_beta_periodic(const word& w);

// Two one-sided sequences that agree on a long central block yet force
// different recovered indices at coordinate 0.  Both windows extend to legal
// points, every anonymous close matches inside the window, and the match of
// the close at 0 lies 2N+1 steps back -- so no window of radius N around the
// center can decide the index.  Demonstrates that the index recovery has no
// sliding-block inverse of any finite radius.
struct witness_pair {
  int N = 1;          // windows agree on coordinates [-N, N]
  int lo = 0, hi = 0; // window covers coordinates lo..hi = [-(2N+1), N]
  collapsed_word window1, window2;
  word image1, image2;
  int mismatch_at = 0;
};

witness_pair extension_witness(int M, int N, int k1, int k2);

}  // namespace dyck
