#include <algorithm>
#include <sstream>

#include "suborb/group.hpp"

namespace suborb {

Fingerprint iso_fingerprint(const AbstractGroup& g) {
  Fingerprint f;
  f.order = g.order();
  for (std::size_t a = 0; a < g.order(); ++a) f.element_orders.push_back(g.element_order(a));
  std::sort(f.element_orders.begin(), f.element_orders.end());
  f.abelian = g.is_abelian();
  return f;
}

Fingerprint iso_fingerprint(const Subgroup& g) { return iso_fingerprint(g.as_abstract()); }

std::string Fingerprint::describe() const {
  if (order == 1) return "1";
  if (element_orders.back() == order) return "Z" + std::to_string(order);
  if (abelian && element_orders.back() == 2) {
    std::string s = "Z2";
    for (std::size_t n = 2; n < order; n *= 2) s += "xZ2";
    return s;
  }
  std::ostringstream os;
  os << "order " << order << (abelian ? " abelian" : " nonabelian") << " {";
  for (std::size_t i = 0; i < element_orders.size(); ++i) os << (i ? "," : "") << element_orders[i];
  os << "}";
  return os.str();
}

namespace {

struct Presentation {
  std::vector<std::size_t> generators;
  // element = parent_of[element] * generators[via[element]]; identity has no parent
  std::vector<std::size_t> parent_of;
  std::vector<std::size_t> via;
  std::vector<std::size_t> bfs_order;
};

Presentation present(const AbstractGroup& g) {
  // Greedy generating set, trying high-order elements first to keep it short.
  std::vector<std::size_t> by_order(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) by_order[i] = i;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](std::size_t a, std::size_t b) { return g.element_order(a) > g.element_order(b); });

  Presentation p;
  std::vector<char> covered(g.order(), 0);
  for (std::size_t cand : by_order) {
    if (covered[cand]) continue;
    p.generators.push_back(cand);
    std::fill(covered.begin(), covered.end(), 0);
    p.parent_of.assign(g.order(), g.order());
    p.via.assign(g.order(), 0);
    p.bfs_order = {g.identity()};
    covered[g.identity()] = 1;
    for (std::size_t i = 0; i < p.bfs_order.size(); ++i) {
      for (std::size_t s = 0; s < p.generators.size(); ++s) {
        const std::size_t y = g.multiply(p.bfs_order[i], p.generators[s]);
        if (covered[y]) continue;
        covered[y] = 1;
        p.parent_of[y] = p.bfs_order[i];
        p.via[y] = s;
        p.bfs_order.push_back(y);
      }
    }
  }
  if (p.generators.empty()) {
    p.parent_of.assign(g.order(), g.order());
    p.via.assign(g.order(), 0);
    p.bfs_order = {g.identity()};
  }
  return p;
}

bool extend_and_check(const AbstractGroup& a, const AbstractGroup& b, const Presentation& p,
                      const std::vector<std::size_t>& images) {
  std::vector<std::size_t> phi(a.order(), b.order());
  phi[a.identity()] = b.identity();
  for (std::size_t i = 1; i < p.bfs_order.size(); ++i) {
    const std::size_t x = p.bfs_order[i];
    phi[x] = b.multiply(phi[p.parent_of[x]], images[p.via[x]]);
  }
  std::vector<char> hit(b.order(), 0);
  for (std::size_t v : phi) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return is_homomorphism(a, b, phi);
}

bool search(const AbstractGroup& a, const AbstractGroup& b, const Presentation& p,
            const std::vector<std::vector<std::size_t>>& options, std::vector<std::size_t>& images, std::size_t depth) {
  if (depth == p.generators.size()) return extend_and_check(a, b, p, images);
  for (std::size_t cand : options[depth]) {
    images[depth] = cand;
    if (search(a, b, p, options, images, depth + 1)) return true;
  }
  return false;
}

}  // namespace

bool are_isomorphic_exact(const AbstractGroup& a, const AbstractGroup& b) {
  if (!(iso_fingerprint(a) == iso_fingerprint(b))) return false;
  const Presentation p = present(a);
  std::vector<std::vector<std::size_t>> options(p.generators.size());
  for (std::size_t s = 0; s < p.generators.size(); ++s) {
    const std::size_t want = a.element_order(p.generators[s]);
    for (std::size_t y = 0; y < b.order(); ++y) {
      if (b.element_order(y) == want) options[s].push_back(y);
    }
  }
  std::vector<std::size_t> images(p.generators.size());
  return search(a, b, p, options, images, 0);
}

bool same_isomorphism_class(const AbstractGroup& a, const AbstractGroup& b) {
  if (!(iso_fingerprint(a) == iso_fingerprint(b))) return false;
  if (a.order() <= kExactIsomorphismLimit && b.order() <= kExactIsomorphismLimit) return are_isomorphic_exact(a, b);
  return true;
}

}  // namespace suborb
