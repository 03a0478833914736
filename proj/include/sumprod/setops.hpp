#pragma once

namespace sumprod {

/// How pairwise set images are deduplicated. Both strategies produce the
/// same canonical output.
enum class Strategy {
  merge,  ///< sort blocks of pairs and merge sorted runs
  hash,   ///< hash-set of canonical values, sorted at the end
};

struct SetOpOptions {
  Strategy strategy = Strategy::merge;
  /// Worker count; 0 means one per hardware thread.
  unsigned threads = 1;
};

}  // namespace sumprod
