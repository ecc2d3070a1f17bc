// Walk through the smallest chain with a non-exact point: two levels,
// d = 2, r = 1, f = diag(1, 0) and g = diag(0, 1) over GF(2).

#include <iostream>

#include "linkgrass/linkgrass.hpp"

using namespace linkgrass;

namespace {

std::string show(const Subspace& v) {
  std::string s = "span{";
  for (std::size_t k = 0; k < v.dim(); ++k) {
    if (k) s += ", ";
    s += "(";
    for (std::size_t j = 0; j < v.ambient_dim(); ++j) s += (j ? "," : "") + std::to_string(v.basis()(k, j).value());
    s += ")";
  }
  return s + "}";
}

std::string show(const ChainPoint& pt) {
  std::string s;
  for (const auto& v : pt.spaces) s += (s.empty() ? "" : " | ") + show(v);
  return s;
}

}  // namespace

int main() {
  const auto c = crossing_chain(2);
  Budget budget;
  const auto pts = enumerate_points(c, budget);
  std::cout << "points: " << pts.size() << "\n";
  ChainPoint node;
  for (const auto& pt : pts) {
    const bool exact = is_exact(c, pt);
    std::cout << "  " << show(pt) << (exact ? "  exact" : "  NOT exact") << "  tangent " << tangent_dimension(c, pt)
              << "\n";
    if (!exact) node = pt;
  }
  const auto [keep_f, keep_g] = exactify(c, node);
  std::cout << "non-exact point lies in the closure of\n  " << show(keep_f) << "\n  " << show(keep_g) << "\n";
}
