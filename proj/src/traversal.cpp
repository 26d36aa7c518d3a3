#include "oct/traversal.hpp"

#include <string>

#include "oct/dbm.hpp"
#include "oct/errors.hpp"
#include "oct/rng.hpp"

namespace oct {

namespace {

void shuffle_pairs(std::vector<TraversalOrder::Pair>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

TraversalOrder::TraversalOrder(std::size_t dim, std::vector<Pair> pairs)
    : dim_(dim), key_first_(true), pairs_(std::move(pairs)) {
  if (pairs_.size() != dim * dim)
    throw InvalidTraversal("traversal covers " + std::to_string(pairs_.size()) +
                           " pairs, expected " + std::to_string(dim * dim));
  std::vector<bool> seen(dim * dim, false);
  for (std::size_t rank = 0; rank < pairs_.size(); ++rank) {
    const auto& [i, j] = pairs_[rank];
    if (i >= dim || j >= dim) throw InvalidTraversal("index pair out of range");
    std::size_t flat = static_cast<std::size_t>(i) * dim + j;
    if (seen[flat]) throw InvalidTraversal("duplicate index pair in traversal");
    seen[flat] = true;
    if (j == bar(i) && rank >= dim) key_first_ = false;
  }
}

TraversalOrder TraversalOrder::row_major(std::size_t dim) {
  std::vector<Pair> v;
  v.reserve(dim * dim);
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j) v.emplace_back(i, j);
  return TraversalOrder(dim, std::move(v));
}

TraversalOrder TraversalOrder::reverse_row_major(std::size_t dim) {
  std::vector<Pair> v;
  v.reserve(dim * dim);
  for (std::uint32_t i = static_cast<std::uint32_t>(dim); i-- > 0;)
    for (std::uint32_t j = static_cast<std::uint32_t>(dim); j-- > 0;) v.emplace_back(i, j);
  return TraversalOrder(dim, std::move(v));
}

TraversalOrder TraversalOrder::shuffled(std::size_t dim, std::uint64_t seed) {
  auto base = row_major(dim);
  std::vector<Pair> v(base.pairs_);
  SplitMix64 rng(seed);
  shuffle_pairs(v, rng);
  return TraversalOrder(dim, std::move(v));
}

TraversalOrder TraversalOrder::keys_first_row_major(std::size_t dim) {
  std::vector<Pair> v;
  v.reserve(dim * dim);
  for (std::uint32_t i = 0; i < dim; ++i)
    v.emplace_back(i, static_cast<std::uint32_t>(bar(i)));
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j)
      if (j != bar(i)) v.emplace_back(i, j);
  return TraversalOrder(dim, std::move(v));
}

TraversalOrder TraversalOrder::keys_first_shuffled(std::size_t dim, std::uint64_t seed) {
  std::vector<Pair> keys;
  std::vector<Pair> rest;
  keys.reserve(dim);
  rest.reserve(dim * dim - dim);
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j)
      (j == bar(i) ? keys : rest).emplace_back(i, j);
  SplitMix64 rng(seed);
  shuffle_pairs(keys, rng);
  shuffle_pairs(rest, rng);
  keys.insert(keys.end(), rest.begin(), rest.end());
  return TraversalOrder(dim, std::move(keys));
}

}  // namespace oct
