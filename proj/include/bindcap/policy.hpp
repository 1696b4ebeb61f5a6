#pragma once

#include <vector>

namespace bindcap {

/// Feedback input policy: p[k] is the probability of sending the high
/// concentration when the previous channel output was state k, for
/// k = 0..n-1. The fully bound state has no entry; the input there cannot
/// affect the next transition.
struct FeedbackPolicy {
  std::vector<double> p;

  static FeedbackPolicy uniform(int n, double value);

  int size() const { return static_cast<int>(p.size()); }
};

/// Throws ValidationError unless every entry is a probability in [0, 1].
void validate(const FeedbackPolicy& pol);

/// As validate(), and additionally requires exactly n entries.
void validate_for(const FeedbackPolicy& pol, int n);

}  // namespace bindcap
