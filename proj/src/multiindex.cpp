#include "dbar/multiindex.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dbar {

namespace {

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("multi-index: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<std::pair<int, int>> entries)
    : MultiIndex(from_pairs(std::vector<std::pair<int, int>>(entries))) {}

MultiIndex MultiIndex::from_pairs(std::vector<std::pair<int, int>> entries) {
  std::sort(entries.begin(), entries.end());
  MultiIndex k;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [coord, exp] = entries[i];
    if (coord < 1) throw std::invalid_argument("multi-index: coordinates are 1-based");
    if (exp < 0) throw std::invalid_argument("multi-index: negative exponent");
    if (i > 0 && entries[i - 1].first == coord) {
      throw std::invalid_argument("multi-index: repeated coordinate " + std::to_string(coord));
    }
    if (exp > 0) k.entries_.push_back({coord, exp});
  }
  return k;
}

MultiIndex MultiIndex::unit(int coord, int exp) { return from_pairs({{coord, exp}}); }

MultiIndex MultiIndex::parse(std::string_view text) {
  MultiIndex k;
  if (text.empty()) return k;
  std::size_t pos = 0;
  int last_coord = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("multi-index: expected nu:exp, got '" + std::string(item) + "'");
    }
    const int coord = parse_int(item.substr(0, colon), "coordinate");
    const int exp = parse_int(item.substr(colon + 1), "exponent");
    if (coord <= last_coord) throw std::invalid_argument("multi-index: coordinates must strictly increase");
    if (exp < 1) throw std::invalid_argument("multi-index: stored exponents must be positive");
    k.entries_.push_back({coord, exp});
    last_coord = coord;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return k;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (const auto& e : entries_) {
    if (!out.empty()) out += ',';
    out += std::to_string(e.coord) + ':' + std::to_string(e.exp);
  }
  return out;
}

int MultiIndex::order() const {
  int total = 0;
  for (const auto& e : entries_) total += e.exp;
  return total;
}

int MultiIndex::exponent(int coord) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                             [](const IndexEntry& e, int c) { return e.coord < c; });
  return (it != entries_.end() && it->coord == coord) ? it->exp : 0;
}

double MultiIndex::log_coeff() const {
  const int total = order();
  if (total == 0) return 0.0;
  double acc = total * std::log(static_cast<double>(total));
  for (const auto& e : entries_) acc -= e.exp * std::log(static_cast<double>(e.exp));
  // Single-coordinate indices cancel exactly; keep rounding from leaking a sign.
  return std::max(acc, 0.0);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex out;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->coord < b->coord)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->coord < a->coord) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.push_back({a->coord, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  MultiIndex out = *this;
  for (const auto& e : other.entries_) {
    const int have = out.exponent(e.coord);
    if (have < e.exp) throw std::domain_error("multi-index: difference has a negative exponent");
    out = out.with_exponent(e.coord, have - e.exp);
  }
  return out;
}

MultiIndex MultiIndex::with_exponent(int coord, int exp) const {
  if (coord < 1 || exp < 0) throw std::invalid_argument("multi-index: bad entry in with_exponent");
  MultiIndex out = *this;
  auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), coord,
                             [](const IndexEntry& e, int c) { return e.coord < c; });
  if (it != out.entries_.end() && it->coord == coord) {
    if (exp == 0) {
      out.entries_.erase(it);
    } else {
      it->exp = exp;
    }
  } else if (exp > 0) {
    out.entries_.insert(it, {coord, exp});
  }
  return out;
}

MultiIndex MultiIndex::truncated(int max_coord) const {
  MultiIndex out;
  for (const auto& e : entries_) {
    if (e.coord <= max_coord) out.entries_.push_back(e);
  }
  return out;
}

MultiIndex MultiIndex::relabeled(std::span<const int> perm) const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : entries_) {
    if (e.coord > static_cast<int>(perm.size())) throw std::out_of_range("multi-index: permutation too short");
    pairs.emplace_back(perm[e.coord - 1], e.exp);
  }
  return from_pairs(std::move(pairs));
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  // Lexicographic on padded exponent vectors: walk the union of coordinates.
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  while (ia != a.entries_.end() || ib != b.entries_.end()) {
    const int ca = ia != a.entries_.end() ? ia->coord : std::numeric_limits<int>::max();
    const int cb = ib != b.entries_.end() ? ib->coord : std::numeric_limits<int>::max();
    const int coord = std::min(ca, cb);
    const int ea = ca == coord ? ia->exp : 0;
    const int eb = cb == coord ? ib->exp : 0;
    if (auto c = ea <=> eb; c != 0) return c;
    if (ca == coord) ++ia;
    if (cb == coord) ++ib;
  }
  return std::strong_ordering::equal;
}

std::vector<MultiIndex> indices_of_order(int dim, int grade) {
  std::vector<MultiIndex> out;
  if (grade < 0 || dim < 0) return out;
  if (grade == 0) {
    out.emplace_back();
    return out;
  }
  if (dim == 0) return out;
  // Enumerate exponent vectors of length dim summing to grade.
  std::vector<int> exps(dim, 0);
  auto emit = [&] {
    std::vector<std::pair<int, int>> pairs;
    for (int nu = 0; nu < dim; ++nu) {
      if (exps[nu] > 0) pairs.emplace_back(nu + 1, exps[nu]);
    }
    out.push_back(MultiIndex::from_pairs(std::move(pairs)));
  };
  auto rec = [&](auto&& self, int nu, int left) -> void {
    if (nu == dim - 1) {
      exps[nu] = left;
      emit();
      return;
    }
    for (int e = 0; e <= left; ++e) {
      exps[nu] = e;
      self(self, nu + 1, left - e);
    }
    exps[nu] = 0;
  };
  rec(rec, 0, grade);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> indices_up_to(int dim, int max_grade) {
  std::vector<MultiIndex> out;
  for (int g = 0; g <= max_grade; ++g) {
    auto level = indices_of_order(dim, g);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace dbar
