#include "dbar/signed_index.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace dbar {

SignedIndex::SignedIndex(std::initializer_list<std::pair<int, int>> entries)
    : SignedIndex(from_pairs(std::vector<std::pair<int, int>>(entries))) {}

SignedIndex SignedIndex::from_pairs(std::vector<std::pair<int, int>> entries) {
  std::sort(entries.begin(), entries.end());
  SignedIndex k;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [coord, value] = entries[i];
    if (coord < 1) throw std::invalid_argument("signed index: coordinates are 1-based");
    if (i > 0 && entries[i - 1].first == coord) throw std::invalid_argument("signed index: repeated coordinate");
    if (value != 0) k.entries_.push_back({coord, value});
  }
  return k;
}

SignedIndex SignedIndex::difference(const MultiIndex& alpha, const MultiIndex& beta) {
  std::vector<std::pair<int, int>> pairs;
  auto a = alpha.entries().begin();
  auto b = beta.entries().begin();
  while (a != alpha.entries().end() || b != beta.entries().end()) {
    if (b == beta.entries().end() || (a != alpha.entries().end() && a->coord < b->coord)) {
      pairs.emplace_back(a->coord, a->exp);
      ++a;
    } else if (a == alpha.entries().end() || b->coord < a->coord) {
      pairs.emplace_back(b->coord, -b->exp);
      ++b;
    } else {
      pairs.emplace_back(a->coord, a->exp - b->exp);
      ++a;
      ++b;
    }
  }
  return from_pairs(std::move(pairs));
}

SignedIndex SignedIndex::from_multi(const MultiIndex& k) { return difference(k, MultiIndex{}); }

SignedIndex SignedIndex::parse(std::string_view text) {
  std::vector<std::pair<int, int>> pairs;
  if (text.empty()) return {};
  std::size_t pos = 0;
  int last = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("signed index: expected nu:value");
    int coord = 0;
    int value = 0;
    const auto cs = item.substr(0, colon);
    const auto vs = item.substr(colon + 1);
    auto r1 = std::from_chars(cs.data(), cs.data() + cs.size(), coord);
    auto r2 = std::from_chars(vs.data(), vs.data() + vs.size(), value);
    if (r1.ec != std::errc{} || r1.ptr != cs.data() + cs.size() || r2.ec != std::errc{} ||
        r2.ptr != vs.data() + vs.size() || value == 0) {
      throw std::invalid_argument("signed index: bad entry '" + std::string(item) + "'");
    }
    if (coord <= last) throw std::invalid_argument("signed index: coordinates must strictly increase");
    last = coord;
    pairs.emplace_back(coord, value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return from_pairs(std::move(pairs));
}

std::string SignedIndex::to_string() const {
  std::string out;
  for (const auto& e : entries_) {
    if (!out.empty()) out += ',';
    out += std::to_string(e.coord) + ':' + std::to_string(e.value);
  }
  return out;
}

int SignedIndex::operator[](int coord) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                             [](const Entry& e, int c) { return e.coord < c; });
  return (it != entries_.end() && it->coord == coord) ? it->value : 0;
}

bool SignedIndex::is_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.value > 0; });
}

int SignedIndex::max_abs() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

MultiIndex SignedIndex::to_multi() const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : entries_) {
    if (e.value < 0) throw std::domain_error("signed index: negative entry has no multi-index form");
    pairs.emplace_back(e.coord, e.value);
  }
  return MultiIndex::from_pairs(std::move(pairs));
}

std::strong_ordering operator<=>(const SignedIndex& a, const SignedIndex& b) {
  return std::lexicographical_compare_three_way(
      a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
      [](const SignedIndex::Entry& x, const SignedIndex::Entry& y) {
        if (auto c = x.coord <=> y.coord; c != 0) return c;
        return x.value <=> y.value;
      });
}

}  // namespace dbar
