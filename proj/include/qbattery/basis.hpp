#ifndef QBATTERY_BASIS_HPP
#define QBATTERY_BASIS_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qbattery {

inline constexpr std::size_t default_max_states = 200000;

// Occupations of N cavities, each holding one two-level system.
struct jch_state {
  std::vector<int> photons;
  std::vector<std::uint8_t> spins;  // 0 = ground, 1 = excited

  friend bool operator==(const jch_state&, const jch_state&) = default;
};

inline bool is_valid(const jch_state& s) {
  if (s.photons.empty() || s.photons.size() != s.spins.size()) return false;
  return std::all_of(s.photons.begin(), s.photons.end(), [](int p) { return p >= 0; }) &&
         std::all_of(s.spins.begin(), s.spins.end(), [](std::uint8_t b) { return b <= 1; });
}

inline int total_excitations(const jch_state& s) {
  return std::accumulate(s.photons.begin(), s.photons.end(), 0) +
         std::accumulate(s.spins.begin(), s.spins.end(), 0);
}

// Spin pattern as an integer, cavity 0 in the least significant bit.
inline std::uint64_t spin_word(const jch_state& s) {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < s.spins.size(); ++i)
    if (s.spins[i]) w |= std::uint64_t{1} << i;
  return w;
}

// Enumeration order: spin word first, then photon vectors lexicographically.
struct jch_order {
  bool operator()(const jch_state& a, const jch_state& b) const {
    const auto wa = spin_word(a), wb = spin_word(b);
    if (wa != wb) return wa < wb;
    return a.photons < b.photons;
  }
};

// Collective state |n, N/2, N/2 - q>: n photons, q two-level systems in the ground state.
struct dicke_state {
  int n = 0;
  int q = 0;

  friend auto operator<=>(const dicke_state&, const dicke_state&) = default;
};

struct dicke_order {
  bool operator()(const dicke_state& a, const dicke_state& b) const { return a < b; }
};

// Ordered, duplicate-free list of basis states with the inverse lookup.
//
// `sites` is N. `extent` is the build argument that fixes the space: the total
// excitation number M for a JCH sector, the photon cutoff for a Dicke basis.
template <class State, class Order>
class basis_index {
 public:
  using state_type = State;

  basis_index(std::vector<State> states, int sites, int extent)
      : states_(std::move(states)), sites_(sites), extent_(extent) {
    if (states_.empty()) throw parameter_error("basis must contain at least one state");
    if (!std::is_sorted(states_.begin(), states_.end(), Order{}))
      throw parameter_error("basis states are not in canonical order");
    for (std::size_t i = 1; i < states_.size(); ++i)
      if (!Order{}(states_[i - 1], states_[i])) throw parameter_error("duplicate basis state");
  }

  std::size_t dim() const { return states_.size(); }
  int sites() const { return sites_; }
  int extent() const { return extent_; }

  const std::vector<State>& states() const { return states_; }
  const State& operator[](std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> find(const State& s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s, Order{});
    if (it == states_.end() || Order{}(s, *it)) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
  }

  std::size_t index_of(const State& s) const {
    if (auto i = find(s)) return *i;
    throw missing_state_error("state is not part of the basis");
  }

  friend bool operator==(const basis_index& a, const basis_index& b) {
    return a.sites_ == b.sites_ && a.extent_ == b.extent_ && a.states_ == b.states_;
  }

 private:
  std::vector<State> states_;
  int sites_;
  int extent_;
};

using jch_basis = basis_index<jch_state, jch_order>;
using dicke_basis = basis_index<dicke_state, dicke_order>;

namespace detail {

inline long double binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0.0L;
  return std::round(std::exp(std::lgamma(static_cast<long double>(n + 1)) -
                             std::lgamma(static_cast<long double>(k + 1)) -
                             std::lgamma(static_cast<long double>(n - k + 1))));
}

// Appends every photon vector with the given total, lexicographically ascending.
inline void append_compositions(jch_state& work, std::size_t site, int remaining,
                                std::vector<jch_state>& out) {
  const std::size_t last = work.photons.size() - 1;
  if (site == last) {
    work.photons[site] = remaining;
    out.push_back(work);
    return;
  }
  for (int p = 0; p <= remaining; ++p) {
    work.photons[site] = p;
    append_compositions(work, site + 1, remaining - p, out);
  }
}

}  // namespace detail

// Size of the N-cavity sector with M excitations, without enumerating it.
inline long double jch_sector_size(int n, long long excitations) {
  long double total = 0.0L;
  for (int k = 0; k <= n && k <= excitations; ++k)
    total += detail::binomial(n, k) * detail::binomial(excitations - k + n - 1, n - 1);
  return total;
}

// All N-cavity configurations holding exactly N*m excitations.
inline jch_basis build_jch_sector(int n, int m, std::size_t max_states = default_max_states) {
  if (n < 1) throw parameter_error("N must be >= 1");
  if (m < 1) throw parameter_error("m must be >= 1");
  const long long excitations = static_cast<long long>(n) * m;
  const long double size = jch_sector_size(n, excitations);
  if (n > 62 || size > static_cast<long double>(max_states))
    throw capacity_error("JCH sector for N=" + std::to_string(n) + ", m=" + std::to_string(m) +
                         " has " + std::to_string(static_cast<double>(size)) +
                         " states, above the cap of " + std::to_string(max_states));

  std::vector<jch_state> states;
  states.reserve(static_cast<std::size_t>(size));
  jch_state work{std::vector<int>(n, 0), std::vector<std::uint8_t>(n, 0)};
  const std::uint64_t words = std::uint64_t{1} << n;
  for (std::uint64_t w = 0; w < words; ++w) {
    int excited = 0;
    for (int i = 0; i < n; ++i) {
      work.spins[i] = static_cast<std::uint8_t>((w >> i) & 1u);
      excited += work.spins[i];
    }
    if (excited > excitations) continue;
    detail::append_compositions(work, 0, static_cast<int>(excitations - excited), states);
  }
  return jch_basis(std::move(states), n, static_cast<int>(excitations));
}

// Photon ladder 0..n_max crossed with the symmetric spin ladder q = 0..N.
inline dicke_basis build_dicke_basis(int n, int n_max, std::size_t max_states = default_max_states) {
  if (n < 1) throw parameter_error("N must be >= 1");
  if (n_max < 0) throw parameter_error("n_max must be >= 0");
  const long double size = static_cast<long double>(n_max + 1) * (n + 1);
  if (size > static_cast<long double>(max_states))
    throw capacity_error("Dicke basis for N=" + std::to_string(n) + ", n_max=" +
                         std::to_string(n_max) + " exceeds the cap of " + std::to_string(max_states));
  std::vector<dicke_state> states;
  states.reserve(static_cast<std::size_t>(size));
  for (int photons = 0; photons <= n_max; ++photons)
    for (int q = 0; q <= n; ++q) states.push_back({photons, q});
  return dicke_basis(std::move(states), n, n_max);
}

}  // namespace qbattery

#endif  // QBATTERY_BASIS_HPP
