// SPDX-License-Identifier: Apache-2.0

#include "starnoma/pairing.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace starnoma {

Matching::Matching(std::vector<int> ru_of_tu) : ru_of_tu_(std::move(ru_of_tu)) {
  if (!is_valid()) throw std::invalid_argument("Matching: not a bijection");
}

Matching Matching::identity(int k) {
  std::vector<int> v(k);
  std::iota(v.begin(), v.end(), 0);
  return Matching(std::move(v));
}

int Matching::tu_of_ru(int r) const {
  auto it = std::find(ru_of_tu_.begin(), ru_of_tu_.end(), r);
  if (it == ru_of_tu_.end()) throw std::out_of_range("Matching: RU not matched");
  return static_cast<int>(it - ru_of_tu_.begin());
}

int Matching::partner(int u) const {
  const int k = size();
  if (u < 0 || u >= 2 * k) throw std::out_of_range("Matching::partner: bad user index");
  return u < k ? k + ru_of_tu_[u] : tu_of_ru(u - k);
}

bool Matching::is_valid() const {
  std::vector<char> seen(ru_of_tu_.size(), 0);
  for (int r : ru_of_tu_) {
    if (r < 0 || r >= size() || seen[r]) return false;
    seen[r] = 1;
  }
  return true;
}

PairingPolicy pairing_policy_from_string(const std::string& name) {
  if (name == "index") return PairingPolicy::Index;
  if (name == "random") return PairingPolicy::Random;
  if (name == "distance") return PairingPolicy::Distance;
  throw std::invalid_argument("unknown pairing policy '" + name + "'");
}

Matching initial_matching(const UserSet& users, const Position3D& ris_position,
                          PairingPolicy policy, std::mt19937_64* rng) {
  int n_tu = 0;
  for (Side s : users.side) n_tu += s == Side::Transmitted ? 1 : 0;
  if (2 * n_tu != users.size()) {
    throw std::invalid_argument("initial_matching: unequal numbers of TUs and RUs");
  }
  const int k = n_tu;
  switch (policy) {
    case PairingPolicy::Index:
      return Matching::identity(k);
    case PairingPolicy::Random: {
      if (rng == nullptr) throw std::invalid_argument("initial_matching: random policy needs rng");
      std::vector<int> v(k);
      std::iota(v.begin(), v.end(), 0);
      // Explicit Fisher-Yates: std::shuffle's draw sequence is not specified.
      for (int i = k - 1; i > 0; --i) {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(v[i], v[pick(*rng)]);
      }
      return Matching(std::move(v));
    }
    case PairingPolicy::Distance: {
      std::vector<double> dist(users.size());
      for (int u = 0; u < users.size(); ++u) dist[u] = distance(users.positions[u], ris_position);
      std::vector<int> tus(k), rus(k);
      std::iota(tus.begin(), tus.end(), 0);
      std::iota(rus.begin(), rus.end(), 0);
      std::stable_sort(tus.begin(), tus.end(), [&](int a, int b) { return dist[a] > dist[b]; });
      std::stable_sort(rus.begin(), rus.end(),
                       [&](int a, int b) { return dist[k + a] < dist[k + b]; });
      std::vector<int> v(k);
      for (int i = 0; i < k; ++i) v[tus[i]] = rus[i];
      return Matching(std::move(v));
    }
  }
  throw std::logic_error("initial_matching: unhandled policy");
}

Matching swap(const Matching& matching, int a, int b) {
  if (a == b) throw std::invalid_argument("swap: identical TU indices");
  if (a < 0 || b < 0 || a >= matching.size() || b >= matching.size()) {
    throw std::out_of_range("swap: TU index out of range");
  }
  std::vector<int> v = matching.key();
  std::swap(v[a], v[b]);
  return Matching(std::move(v));
}

std::string to_string(const Matching& matching) {
  std::ostringstream os;
  for (int t = 0; t < matching.size(); ++t) {
    if (t) os << ' ';
    os << 'T' << t << "-R" << matching.ru_of_tu(t);
  }
  return os.str();
}

}  // namespace starnoma
