// SPDX-License-Identifier: Apache-2.0
//
// One-to-one pairing of transmitted users (TUs) with reflected users (RUs).

#ifndef STARNOMA_PAIRING_HPP
#define STARNOMA_PAIRING_HPP

#include <random>
#include <string>
#include <vector>

#include "starnoma/scenario.hpp"

namespace starnoma {

/// Bijection TU index -> RU index. Pair p is the pair containing TU p.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<int> ru_of_tu);

  static Matching identity(int k);

  int size() const { return static_cast<int>(ru_of_tu_.size()); }
  int ru_of_tu(int t) const { return ru_of_tu_[t]; }
  int tu_of_ru(int r) const;
  const std::vector<int>& key() const { return ru_of_tu_; }

  /// Global index of the partner of global user `u` (TUs [0,K), RUs [K,2K)).
  int partner(int u) const;

  bool is_valid() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<int> ru_of_tu_;
};

enum class PairingPolicy { Index, Random, Distance };

PairingPolicy pairing_policy_from_string(const std::string& name);

/// `Distance` pairs TUs sorted by RIS distance (descending) with RUs sorted by
/// RIS distance (ascending): the far TU goes with the near RU.
Matching initial_matching(const UserSet& users, const Position3D& ris_position,
                          PairingPolicy policy, std::mt19937_64* rng = nullptr);

/// TUs `a` and `b` exchange their RUs.
Matching swap(const Matching& matching, int a, int b);

std::string to_string(const Matching& matching);

}  // namespace starnoma

#endif  // STARNOMA_PAIRING_HPP
