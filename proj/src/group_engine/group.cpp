#include "suborb/group.hpp"

#include <algorithm>
#include <deque>

#include "suborb/error.hpp"

namespace suborb {

// ---------------------------------------------------------------- AbstractGroup

AbstractGroup::AbstractGroup(std::size_t order, std::vector<std::size_t> table,
                             std::vector<std::vector<std::size_t>> labels)
    : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
  require(order_ > 0 && table_.size() == order_ * order_, ErrorCode::DimensionMismatch,
          "group table has wrong size");
  for (std::size_t v : table_) require(v < order_, ErrorCode::NotSubgroup, "group table entry out of range");

  bool found = false;
  for (std::size_t e = 0; e < order_ && !found; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < order_ && ok; ++a) ok = multiply(e, a) == a && multiply(a, e) == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  require(found, ErrorCode::NotSubgroup, "group table has no identity");

  inverse_.assign(order_, order_);
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) {
      if (multiply(a, b) == identity_) {
        inverse_[a] = b;
        break;
      }
    }
    require(inverse_[a] < order_, ErrorCode::NotSubgroup, "group table element without inverse");
  }
}

std::size_t AbstractGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t p = a; p != identity_; p = multiply(p, a)) ++k;
  return k;
}

bool AbstractGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = a + 1; b < order_; ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

bool AbstractGroup::verify_axioms() const {
  for (std::size_t a = 0; a < order_; ++a) {
    if (multiply(identity_, a) != a || multiply(a, identity_) != a) return false;
    if (multiply(a, inverse_[a]) != identity_ || multiply(inverse_[a], a) != identity_) return false;
    for (std::size_t b = 0; b < order_; ++b) {
      const std::size_t ab = multiply(a, b);
      for (std::size_t c = 0; c < order_; ++c) {
        if (multiply(ab, c) != multiply(a, multiply(b, c))) return false;
      }
    }
  }
  return true;
}

// ----------------------------------------------------------- FiniteMatrixGroup

FiniteMatrixGroup::FiniteMatrixGroup(std::size_t dim, std::vector<RatMatrix> elements,
                                     std::vector<RatMatrix> generators, AbstractGroup table,
                                     std::map<RatMatrix, std::size_t> index)
    : dim_(dim),
      elements_(std::move(elements)),
      generators_(std::move(generators)),
      table_(std::move(table)),
      index_(std::move(index)) {}

GroupPtr FiniteMatrixGroup::build_from_sorted(std::size_t dim, std::vector<RatMatrix> elements, std::vector<RatMatrix> generators) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::map<RatMatrix, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);

  const std::size_t n = elements.size();
  std::vector<std::size_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(elements[a] * elements[b]);
      require(it != index.end(), ErrorCode::NotSubgroup, "matrix set is not closed under multiplication");
      table[a * n + b] = it->second;
    }
  }
  AbstractGroup abstract(n, std::move(table));
  require(elements[abstract.identity()].is_identity(), ErrorCode::NotSubgroup,
          "matrix set does not contain the identity");
  // Using `new` because the constructor is private.
  return GroupPtr(new FiniteMatrixGroup(dim, std::move(elements), std::move(generators), std::move(abstract),
                                        std::move(index)));
}

GroupPtr FiniteMatrixGroup::generate(const std::vector<RatMatrix>& generators, std::size_t dim,
                                     std::size_t max_order) {
  for (const RatMatrix& g : generators) {
    require(g.rows() == dim && g.cols() == dim, ErrorCode::DimensionMismatch,
            "generator is not " + std::to_string(dim) + "x" + std::to_string(dim));
    require(g.rank() == dim, ErrorCode::NonInvertibleGenerator, "generator " + g.to_string() + " is singular");
  }
  // Right multiplication by generators from the identity; for a finite group the
  // monoid closure already contains all inverses.
  std::map<RatMatrix, std::size_t> seen;
  std::vector<RatMatrix> elements{RatMatrix::identity(dim)};
  seen.emplace(elements.front(), 0);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const RatMatrix& g : generators) {
      RatMatrix p = elements[i] * g;
      if (seen.contains(p)) continue;
      if (elements.size() >= max_order) {
        fail(ErrorCode::NotFiniteWithinBound,
             "closure exceeds max_order = " + std::to_string(max_order));
      }
      seen.emplace(p, elements.size());
      elements.push_back(std::move(p));
    }
  }
  return build_from_sorted(dim, std::move(elements), generators);
}

GroupPtr FiniteMatrixGroup::from_elements(std::vector<RatMatrix> elements, std::size_t dim,
                                          std::vector<RatMatrix> generators) {
  require(!elements.empty(), ErrorCode::NotSubgroup, "empty element list");
  for (const RatMatrix& g : elements) {
    require(g.rows() == dim && g.cols() == dim, ErrorCode::DimensionMismatch, "element has wrong shape");
  }
  return build_from_sorted(dim, std::move(elements), std::move(generators));
}

std::optional<std::size_t> FiniteMatrixGroup::index_of(const RatMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// -------------------------------------------------------------------- Subgroup

Subgroup::Subgroup(GroupPtr parent, std::vector<std::size_t> members)
    : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_->order(), 0) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (std::size_t m : members_) mask_.at(m) = 1;
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<std::size_t> all(parent->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  const std::size_t e = parent->identity();
  return Subgroup(std::move(parent), {e});
}

Subgroup Subgroup::generated_by(GroupPtr parent, std::span<const std::size_t> generators) {
  const std::size_t e = parent->identity();
  std::vector<std::size_t> members{e};
  std::vector<char> seen(parent->order(), 0);
  seen[e] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t g : generators) {
      const std::size_t p = parent->multiply(members[i], g);
      if (!seen[p]) {
        seen[p] = 1;
        members.push_back(p);
      }
    }
  }
  return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::from_members(GroupPtr parent, std::vector<std::size_t> members) {
  for (std::size_t m : members) {
    require(m < parent->order(), ErrorCode::NotSubgroup, "member index out of range");
  }
  Subgroup s(std::move(parent), std::move(members));
  require(s.contains(s.parent_->identity()), ErrorCode::NotSubgroup, "member set lacks the identity");
  for (std::size_t a : s.members_) {
    for (std::size_t b : s.members_) {
      require(s.contains(s.parent_->multiply(a, b)), ErrorCode::NotSubgroup, "member set is not closed");
    }
  }
  return s;
}

std::optional<std::size_t> Subgroup::position_of(std::size_t parent_index) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), parent_index);
  if (it == members_.end() || *it != parent_index) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  if (parent_ != o.parent_) return false;
  return std::all_of(members_.begin(), members_.end(), [&](std::size_t m) { return o.contains(m); });
}

bool Subgroup::is_normal_in(const Subgroup& ambient) const {
  for (std::size_t g : ambient.members()) {
    const std::size_t g_inv = parent_->inverse(g);
    for (std::size_t s : members_) {
      if (!contains(parent_->multiply(parent_->multiply(g, s), g_inv))) return false;
    }
  }
  return true;
}

AbstractGroup Subgroup::as_abstract() const {
  const std::size_t n = members_.size();
  std::vector<std::size_t> table(n * n);
  std::vector<std::vector<std::size_t>> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = {members_[a]};
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = *position_of(parent_->multiply(members_[a], members_[b]));
    }
  }
  return AbstractGroup(n, std::move(table), std::move(labels));
}

bool operator<(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members_ < b.members_;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  require(a.parent() == b.parent(), ErrorCode::NotSubgroup, "intersection of subgroups of different groups");
  std::vector<std::size_t> common;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::back_inserter(common));
  return Subgroup::from_members(a.parent(), std::move(common));
}

Subgroup stabilizer(const Subgroup& g, const Vector& x) {
  require(x.size() == g.parent()->dim(), ErrorCode::DimensionMismatch, "stabilizer: point has wrong length");
  std::vector<std::size_t> fixing;
  for (std::size_t i : g.members()) {
    if (g.matrix(i) * x == x) fixing.push_back(i);
  }
  return Subgroup::from_members(g.parent(), std::move(fixing));
}

Subgroup pointwise_stabilizer(const Subgroup& g, const AffineSubspace& v) {
  require(v.ambient_dim() == g.parent()->dim(), ErrorCode::DimensionMismatch,
          "pointwise_stabilizer: subspace has wrong ambient dimension");
  std::vector<std::size_t> fixing;
  for (std::size_t i : g.members()) {
    if (subspace_contained_in(v, fixed_space(g.matrix(i)))) fixing.push_back(i);
  }
  return Subgroup::from_members(g.parent(), std::move(fixing));
}

// -------------------------------------------------------------------- GroupHom

bool is_homomorphism(const AbstractGroup& domain, const AbstractGroup& codomain,
                     std::span<const std::size_t> image_of) {
  if (image_of.size() != domain.order()) return false;
  for (std::size_t v : image_of) {
    if (v >= codomain.order()) return false;
  }
  for (std::size_t a = 0; a < domain.order(); ++a) {
    for (std::size_t b = 0; b < domain.order(); ++b) {
      if (image_of[domain.multiply(a, b)] != codomain.multiply(image_of[a], image_of[b])) return false;
    }
  }
  return true;
}

GroupHom::GroupHom(AbstractGroup domain, AbstractGroup codomain, std::vector<std::size_t> image_of)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), image_of_(std::move(image_of)) {
  require(is_homomorphism(domain_, codomain_, image_of_), ErrorCode::NotHomomorphism,
          "map does not respect the group tables");
}

bool GroupHom::is_injective() const {
  for (std::size_t a = 0; a < domain_.order(); ++a) {
    if (a != domain_.identity() && image_of_[a] == codomain_.identity()) return false;
  }
  return true;
}

bool GroupHom::is_surjective() const {
  std::vector<char> hit(codomain_.order(), 0);
  for (std::size_t v : image_of_) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

}  // namespace suborb
