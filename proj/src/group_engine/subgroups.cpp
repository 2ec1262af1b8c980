#include <algorithm>
#include <set>

#include "suborb/error.hpp"
#include "suborb/group.hpp"

namespace suborb {

namespace {

struct Node {
  std::vector<std::size_t> members;  // sorted
  std::vector<std::size_t> generators;
};

// <gens> inside g. A subgroup strictly containing more than half of g is g itself
// (Lagrange), so the closure stops early once it passes |g| / 2.
std::vector<std::size_t> closure(const FiniteMatrixGroup& parent, const std::vector<std::size_t>& gens,
                                 const Subgroup& g) {
  std::vector<std::size_t> members{parent.identity()};
  std::vector<char> seen(parent.order(), 0);
  seen[parent.identity()] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t s : gens) {
      const std::size_t p = parent.multiply(members[i], s);
      if (seen[p]) continue;
      seen[p] = 1;
      members.push_back(p);
      if (2 * members.size() > g.order()) return g.members();
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const Subgroup& g, std::size_t bound) {
  require(g.order() <= bound, ErrorCode::GroupTooLarge,
          "subgroup enumeration bound " + std::to_string(bound) + " exceeded by order " + std::to_string(g.order()));
  const FiniteMatrixGroup& parent = *g.parent();

  // Every subgroup is reached from the trivial one by adjoining one element at a time.
  std::set<std::vector<std::size_t>> seen;
  std::vector<Node> nodes{{{parent.identity()}, {}}};
  seen.insert(nodes.front().members);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t x : g.members()) {
      if (std::binary_search(nodes[i].members.begin(), nodes[i].members.end(), x)) continue;
      std::vector<std::size_t> gens = nodes[i].generators;
      gens.push_back(x);
      std::vector<std::size_t> members = closure(parent, gens, g);
      if (seen.insert(members).second) nodes.push_back({std::move(members), std::move(gens)});
    }
  }

  std::vector<Subgroup> out;
  out.reserve(nodes.size());
  for (Node& n : nodes) out.push_back(Subgroup::generated_by(g.parent(), n.generators));
  std::sort(out.begin(), out.end());
  return out;
}

QuotientGroup quotient_group(const Subgroup& d, const Subgroup& k) {
  require(k.is_subgroup_of(d), ErrorCode::NotSubgroup, "kernel is not contained in the group");
  require(k.is_normal_in(d), ErrorCode::NotNormal, "kernel is not normal");
  const FiniteMatrixGroup& parent = *d.parent();

  // Cosets x K in order of their least member; d.members() is sorted, so the
  // first unassigned member of each coset is its least element.
  std::vector<std::size_t> coset_of(d.order(), d.order());
  std::vector<std::size_t> reps;
  std::vector<std::vector<std::size_t>> labels;
  for (std::size_t pos = 0; pos < d.order(); ++pos) {
    if (coset_of[pos] != d.order()) continue;
    const std::size_t x = d.members()[pos];
    std::vector<std::size_t> coset;
    for (std::size_t kk : k.members()) {
      const std::size_t y = parent.multiply(x, kk);
      coset_of[*d.position_of(y)] = reps.size();
      coset.push_back(y);
    }
    std::sort(coset.begin(), coset.end());
    reps.push_back(x);
    labels.push_back(std::move(coset));
  }

  const std::size_t m = reps.size();
  std::vector<std::size_t> table(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      table[a * m + b] = coset_of[*d.position_of(parent.multiply(reps[a], reps[b]))];
    }
  }
  AbstractGroup quotient(m, std::move(table), std::move(labels));
  GroupHom projection(d.as_abstract(), quotient, coset_of);
  return QuotientGroup{std::move(quotient), std::move(projection), std::move(reps)};
}

ComplementResult find_complement(const Subgroup& d, const Subgroup& k, std::size_t bound) {
  require(k.is_subgroup_of(d), ErrorCode::NotSubgroup, "kernel is not contained in the group");
  require(k.is_normal_in(d), ErrorCode::NotNormal, "kernel is not normal");
  const std::size_t target = d.order() / k.order();
  if (k.is_trivial()) return d;

  NoComplementCertificate cert{d.order(), k.order(), 0, 0};
  for (const Subgroup& c : all_subgroups(d, bound)) {
    ++cert.subgroups_examined;
    if (c.order() != target) continue;
    ++cert.candidates_of_complement_order;
    // |c k| = |c| |k| / |c ∩ k| = |d| once the intersection is trivial.
    if (intersection(c, k).is_trivial()) return c;
  }
  return cert;
}

bool verify_complement(const Subgroup& d, const Subgroup& k, const Subgroup& c) {
  if (!c.is_subgroup_of(d) || !k.is_subgroup_of(d)) return false;
  if (!intersection(c, k).is_trivial()) return false;

  const FiniteMatrixGroup& parent = *d.parent();
  std::vector<char> hit(parent.order(), 0);
  for (std::size_t a : c.members())
    for (std::size_t b : k.members()) hit[parent.multiply(a, b)] = 1;
  for (std::size_t x : d.members()) {
    if (!hit[x]) return false;
  }

  // Projection restricted to c must be a bijective homomorphism onto d/k.
  const QuotientGroup q = quotient_group(d, k);
  std::vector<std::size_t> restricted;
  for (std::size_t a : c.members()) restricted.push_back(q.projection(*d.position_of(a)));
  if (!is_homomorphism(c.as_abstract(), q.group, restricted)) return false;
  std::vector<std::size_t> sorted = restricted;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted.size() == q.group.order();
}

}  // namespace suborb
