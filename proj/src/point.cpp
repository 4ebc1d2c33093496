#include "dbar/point.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace dbar {

Point::Point(std::initializer_list<std::pair<int, cplx>> entries)
    : Point(from_pairs(std::vector<std::pair<int, cplx>>(entries))) {}

Point Point::from_pairs(std::vector<std::pair<int, cplx>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Point z;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [coord, value] = entries[i];
    if (coord < 1) throw std::invalid_argument("point: coordinates are 1-based");
    if (i > 0 && entries[i - 1].first == coord) {
      throw std::invalid_argument("point: repeated coordinate " + std::to_string(coord));
    }
    if (value != cplx{}) z.entries_.push_back({coord, value});
  }
  return z;
}

Point Point::from_dense(std::span<const cplx> values) {
  Point z;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != cplx{}) z.entries_.push_back({static_cast<int>(i) + 1, values[i]});
  }
  return z;
}

Point Point::parse(std::string_view text) {
  std::vector<std::pair<int, cplx>> pairs;
  int last = 0;
  std::size_t pos = 0;
  while (!text.empty() && pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("point: expected nu:val in '" + std::string(item) + "'");
    int coord = 0;
    const auto cs = item.substr(0, colon);
    if (auto [p, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), coord); ec != std::errc{} || p != cs.data() + cs.size()) {
      throw std::invalid_argument("point: bad coordinate '" + std::string(cs) + "'");
    }
    // std::from_chars for double is missing on some toolchains; stod is fine here.
    const std::string vs(item.substr(colon + 1));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(vs, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (vs.empty() || used != vs.size()) throw std::invalid_argument("point: bad value '" + vs + "'");
    if (coord <= last) throw std::invalid_argument("point: coordinates must strictly increase");
    last = coord;
    pairs.emplace_back(coord, value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return from_pairs(std::move(pairs));
}

cplx Point::operator[](int coord) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                             [](const Entry& e, int c) { return e.coord < c; });
  return (it != entries_.end() && it->coord == coord) ? it->value : cplx{};
}

double Point::l1_norm() const {
  double total = 0.0;
  for (const auto& e : entries_) total += std::abs(e.value);
  return total;
}

std::vector<cplx> Point::dense(int dim) const {
  if (max_coord() > dim) throw std::out_of_range("point: support exceeds requested dimension");
  std::vector<cplx> out(static_cast<std::size_t>(dim));
  for (const auto& e : entries_) out[e.coord - 1] = e.value;
  return out;
}

std::vector<double> Point::moduli() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(std::abs(e.value));
  return out;
}

Point Point::scaled(double factor) const {
  Point out;
  if (factor == 0.0) return out;
  out.entries_ = entries_;
  for (auto& e : out.entries_) e.value *= factor;
  return out;
}

}  // namespace dbar
