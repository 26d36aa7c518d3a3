#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace oct {

// A bijection from ranks 0..dim^2-1 to matrix index pairs, driving the
// in-place incremental algorithms. key_first() reports whether every key
// pair (i, bar i) sits at a rank below dim, the precondition of the
// strong/tight in-place variants.
class TraversalOrder {
 public:
  using Pair = std::pair<std::uint32_t, std::uint32_t>;

  // Validates that pairs is a permutation of all dim^2 index pairs;
  // throws InvalidTraversal otherwise.
  TraversalOrder(std::size_t dim, std::vector<Pair> pairs);

  static TraversalOrder row_major(std::size_t dim);
  static TraversalOrder reverse_row_major(std::size_t dim);
  static TraversalOrder shuffled(std::size_t dim, std::uint64_t seed);
  // Key pairs first (shuffled among themselves for the random variant),
  // then the remaining pairs.
  static TraversalOrder keys_first_row_major(std::size_t dim);
  static TraversalOrder keys_first_shuffled(std::size_t dim, std::uint64_t seed);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return pairs_.size(); }
  bool key_first() const { return key_first_; }
  const Pair& at(std::size_t rank) const { return pairs_[rank]; }

 private:
  std::size_t dim_;
  bool key_first_;
  std::vector<Pair> pairs_;
};

}  // namespace oct
