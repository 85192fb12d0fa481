#include "sheafkit/poset.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sheafkit {

Poset::Poset(std::size_t n, std::vector<Cover> covers)
    : n_(n), covers_(std::move(covers)), up_(n), down_(n), above_(n, boost::dynamic_bitset<>(n)) {
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t c = 0; c < covers_.size(); ++c) {
    const Cover& cv = covers_[c];
    if (cv.lo >= n || cv.hi >= n) throw std::invalid_argument("cover refers to an unknown element");
    if (cv.lo == cv.hi) throw std::invalid_argument("cover from an element to itself");
    up_[cv.lo].push_back(c);
    down_[cv.hi].push_back(c);
    ++indegree[cv.hi];
  }
  // Kahn's algorithm, smallest index first for a deterministic order.
  std::vector<std::size_t> ready;
  for (std::size_t x = 0; x < n; ++x)
    if (indegree[x] == 0) ready.push_back(x);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    std::size_t x = *it;
    ready.erase(it);
    order_.push_back(x);
    for (std::size_t c : up_[x])
      if (--indegree[covers_[c].hi] == 0) ready.push_back(covers_[c].hi);
  }
  if (order_.size() != n) throw std::invalid_argument("covering relation has a cycle");
  for (auto x = order_.rbegin(); x != order_.rend(); ++x) {
    above_[*x].set(*x);
    for (std::size_t c : up_[*x]) above_[*x] |= above_[covers_[c].hi];
  }
}

std::vector<std::size_t> Poset::up_set(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < n_; ++y)
    if (above_[x][y]) out.push_back(y);
  return out;
}

std::vector<std::size_t> Poset::down_set(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < n_; ++y)
    if (above_[y][x]) out.push_back(y);
  return out;
}

Poset Poset::opposite() const {
  std::vector<Cover> flipped;
  flipped.reserve(covers_.size());
  for (const Cover& c : covers_) flipped.push_back({c.hi, c.lo});
  return Poset(n_, std::move(flipped));
}

std::vector<Cover> Poset::induced_covers(const std::vector<bool>& members) const {
  std::vector<std::size_t> inside;
  for (std::size_t x = 0; x < n_; ++x)
    if (members[x]) inside.push_back(x);
  std::vector<Cover> out;
  for (std::size_t a : inside) {
    for (std::size_t b : inside) {
      if (!less(a, b)) continue;
      bool direct = true;
      for (std::size_t m : inside) {
        if (less(a, m) && less(m, b)) {
          direct = false;
          break;
        }
      }
      if (direct) out.push_back({a, b});
    }
  }
  return out;
}

std::vector<std::size_t> Poset::chain(std::size_t a, std::size_t b) const {
  if (!leq(a, b)) {
    throw std::invalid_argument("no chain from " + std::to_string(a) + " to " + std::to_string(b));
  }
  std::vector<std::size_t> out;
  std::size_t x = a;
  while (x != b) {
    for (std::size_t c : up_[x]) {
      if (leq(covers_[c].hi, b)) {
        out.push_back(c);
        x = covers_[c].hi;
        break;
      }
    }
  }
  return out;
}

}  // namespace sheafkit
