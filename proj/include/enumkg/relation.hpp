#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace enumkg {

// A finite binary relation with set semantics. Pairs are kept ordered so
// iteration order is deterministic; a forward index is built on demand by
// the composition helpers below.
template <typename T>
class BinaryRelation {
  struct SourceKey {
    const T& value;
  };

  struct PairLess {
    using is_transparent = void;
    bool operator()(const std::pair<T, T>& a, const std::pair<T, T>& b) const { return a < b; }
    bool operator()(const std::pair<T, T>& a, SourceKey k) const { return a.first < k.value; }
    bool operator()(SourceKey k, const std::pair<T, T>& a) const { return k.value < a.first; }
  };

public:
  using pair_type = std::pair<T, T>;
  using container = std::set<pair_type, PairLess>;
  using const_iterator = typename container::const_iterator;

  BinaryRelation() = default;
  BinaryRelation(std::initializer_list<pair_type> pairs) : pairs_(pairs) {}

  template <typename It>
  BinaryRelation(It first, It last) : pairs_(first, last) {}

  bool insert(T from, T to) { return pairs_.emplace(std::move(from), std::move(to)).second; }
  bool insert(pair_type p) { return pairs_.insert(std::move(p)).second; }
  bool erase(const T& from, const T& to) { return pairs_.erase({from, to}) > 0; }
  bool contains(const T& from, const T& to) const { return pairs_.count({from, to}) > 0; }

  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  void clear() noexcept { pairs_.clear(); }

  const_iterator begin() const noexcept { return pairs_.begin(); }
  const_iterator end() const noexcept { return pairs_.end(); }
  const container& pairs() const noexcept { return pairs_; }

  // Targets reachable from `from`. Pairs are sorted by source, so this is a
  // range scan.
  std::set<T> image(const T& from) const {
    std::set<T> out;
    auto [first, last] = pairs_.equal_range(SourceKey{from});
    for (; first != last; ++first) out.insert(out.end(), first->second);
    return out;
  }

  std::set<T> preimage(const T& to) const {
    std::set<T> out;
    for (const auto& [a, b] : pairs_) {
      if (b == to) out.insert(a);
    }
    return out;
  }

  std::set<T> domain() const {
    std::set<T> out;
    for (const auto& p : pairs_) out.insert(out.end(), p.first);
    return out;
  }

  std::set<T> range() const {
    std::set<T> out;
    for (const auto& p : pairs_) out.insert(p.second);
    return out;
  }

  BinaryRelation& operator|=(const BinaryRelation& other) {
    pairs_.insert(other.pairs_.begin(), other.pairs_.end());
    return *this;
  }

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;

private:
  container pairs_;
};

template <typename T>
BinaryRelation<T> reverse(const BinaryRelation<T>& r) {
  BinaryRelation<T> out;
  for (const auto& [a, b] : r) out.insert(b, a);
  return out;
}

template <typename T>
BinaryRelation<T> unite(BinaryRelation<T> a, const BinaryRelation<T>& b) {
  a |= b;
  return a;
}

// Relational composition: {(a, c) : (a, b) in first and (b, c) in second}.
template <typename T>
BinaryRelation<T> compose(const BinaryRelation<T>& first, const BinaryRelation<T>& second) {
  std::map<T, std::vector<T>> successors;
  for (const auto& [b, c] : second) successors[b].push_back(c);
  BinaryRelation<T> out;
  for (const auto& [a, b] : first) {
    auto it = successors.find(b);
    if (it == successors.end()) continue;
    for (const auto& c : it->second) out.insert(a, c);
  }
  return out;
}

}  // namespace enumkg
