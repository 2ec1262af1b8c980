#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "suborb/affine.hpp"
#include "suborb/matrix.hpp"

namespace suborb {

inline constexpr std::size_t kDefaultMaxOrder = 10'000;
inline constexpr std::size_t kDefaultSubgroupBound = 512;
inline constexpr std::size_t kExactIsomorphismLimit = 64;

/// A finite group given by its multiplication table on indices 0..order-1.
class AbstractGroup {
 public:
  /// `table[a * order + b]` is the index of a*b. No axioms are checked here; see verify_axioms().
  AbstractGroup(std::size_t order, std::vector<std::size_t> table,
                std::vector<std::vector<std::size_t>> labels = {});

  std::size_t order() const { return order_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
  std::size_t element_order(std::size_t a) const;
  bool is_abelian() const;
  const std::vector<std::size_t>& table() const { return table_; }
  /// Provenance per element, e.g. the parent indices forming a coset.
  const std::vector<std::vector<std::size_t>>& labels() const { return labels_; }

  /// Exhaustive check of closure, identity, inverses and associativity.
  bool verify_axioms() const;

 private:
  std::size_t order_;
  std::vector<std::size_t> table_;
  std::vector<std::vector<std::size_t>> labels_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// Finite group of invertible rational matrices in canonical (lexicographic) element order.
class FiniteMatrixGroup {
 public:
  /// Closure of the generators; throws NotFiniteWithinBound or NonInvertibleGenerator.
  static std::shared_ptr<const FiniteMatrixGroup> generate(const std::vector<RatMatrix>& generators,
                                                           std::size_t dim,
                                                           std::size_t max_order = kDefaultMaxOrder);
  /// Builds from a complete element list; throws NotSubgroup if the set is not closed.
  static std::shared_ptr<const FiniteMatrixGroup> from_elements(std::vector<RatMatrix> elements, std::size_t dim,
                                                                std::vector<RatMatrix> generators = {});

  std::size_t dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const RatMatrix& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<RatMatrix>& elements() const { return elements_; }
  const std::vector<RatMatrix>& generators() const { return generators_; }
  std::optional<std::size_t> index_of(const RatMatrix& m) const;

  const AbstractGroup& table() const { return table_; }
  std::size_t identity() const { return table_.identity(); }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_.multiply(a, b); }
  std::size_t inverse(std::size_t a) const { return table_.inverse(a); }

  bool same_elements(const FiniteMatrixGroup& o) const { return elements_ == o.elements_; }

 private:
  static std::shared_ptr<const FiniteMatrixGroup> build_from_sorted(std::size_t dim, std::vector<RatMatrix> elements,
                                                                    std::vector<RatMatrix> generators);
  FiniteMatrixGroup(std::size_t dim, std::vector<RatMatrix> elements, std::vector<RatMatrix> generators,
                    AbstractGroup table, std::map<RatMatrix, std::size_t> index);

  std::size_t dim_;
  std::vector<RatMatrix> elements_;
  std::vector<RatMatrix> generators_;
  AbstractGroup table_;
  std::map<RatMatrix, std::size_t> index_;
};

using GroupPtr = std::shared_ptr<const FiniteMatrixGroup>;

inline GroupPtr generate_group(const std::vector<RatMatrix>& generators, std::size_t dim,
                               std::size_t max_order = kDefaultMaxOrder) {
  return FiniteMatrixGroup::generate(generators, dim, max_order);
}

/// Subset of a parent group closed under its multiplication.
class Subgroup {
 public:
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);
  static Subgroup generated_by(GroupPtr parent, std::span<const std::size_t> generators);
  /// Validates closure; throws NotSubgroup.
  static Subgroup from_members(GroupPtr parent, std::vector<std::size_t> members);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(std::size_t parent_index) const { return mask_.at(parent_index) != 0; }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_->order(); }
  /// Position of a parent index in members(), if present.
  std::optional<std::size_t> position_of(std::size_t parent_index) const;
  const RatMatrix& matrix(std::size_t parent_index) const { return parent_->element(parent_index); }

  bool is_subgroup_of(const Subgroup& o) const;
  /// True iff g s g^-1 lies in this subgroup for all s here and g in `ambient`.
  bool is_normal_in(const Subgroup& ambient) const;
  /// Multiplication table relabeled by position in members().
  AbstractGroup as_abstract() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }
  /// Canonical order: by order, then by member list.
  friend bool operator<(const Subgroup& a, const Subgroup& b);

 private:
  Subgroup(GroupPtr parent, std::vector<std::size_t> members);

  GroupPtr parent_;
  std::vector<std::size_t> members_;
  std::vector<char> mask_;
};

Subgroup intersection(const Subgroup& a, const Subgroup& b);

/// Every subgroup of g exactly once, canonically ordered. Throws GroupTooLarge above `bound`.
std::vector<Subgroup> all_subgroups(const Subgroup& g, std::size_t bound = kDefaultSubgroupBound);

/// { s in g : s x = x }.
Subgroup stabilizer(const Subgroup& g, const Vector& x);
/// { s in g : v is contained in Fix(s) }.
Subgroup pointwise_stabilizer(const Subgroup& g, const AffineSubspace& v);

/// Homomorphism between two table groups, stored as the image of every domain index.
class GroupHom {
 public:
  /// Throws NotHomomorphism when image_of does not respect the tables.
  GroupHom(AbstractGroup domain, AbstractGroup codomain, std::vector<std::size_t> image_of);

  const AbstractGroup& domain() const { return domain_; }
  const AbstractGroup& codomain() const { return codomain_; }
  std::size_t operator()(std::size_t a) const { return image_of_.at(a); }
  const std::vector<std::size_t>& image_of() const { return image_of_; }
  bool is_injective() const;
  bool is_surjective() const;

 private:
  AbstractGroup domain_;
  AbstractGroup codomain_;
  std::vector<std::size_t> image_of_;
};

bool is_homomorphism(const AbstractGroup& domain, const AbstractGroup& codomain,
                     std::span<const std::size_t> image_of);

struct QuotientGroup {
  AbstractGroup group;
  /// Domain indices are positions in d.members().
  GroupHom projection;
  /// Least parent index of each coset, in coset order.
  std::vector<std::size_t> representatives;
};

/// d/k; throws NotSubgroup when k is not inside d and NotNormal when k is not normal in d.
QuotientGroup quotient_group(const Subgroup& d, const Subgroup& k);

/// Proof by exhaustion that no subgroup of d complements k.
struct NoComplementCertificate {
  std::size_t delta_order = 0;
  std::size_t kernel_order = 0;
  std::size_t subgroups_examined = 0;
  /// Subgroups of order |d|/|k| (each meets k nontrivially).
  std::size_t candidates_of_complement_order = 0;
};

using ComplementResult = std::variant<Subgroup, NoComplementCertificate>;

/// First subgroup c of d (canonical order) with c ∩ k = {e} and c k = d.
ComplementResult find_complement(const Subgroup& d, const Subgroup& k, std::size_t bound = kDefaultSubgroupBound);

/// Checks c ∩ k = {e}, c k = d, and that the projection d -> d/k restricts to an
/// isomorphism c -> d/k (so its inverse is a homomorphic section).
bool verify_complement(const Subgroup& d, const Subgroup& k, const Subgroup& c);

struct Fingerprint {
  std::size_t order = 1;
  std::vector<std::size_t> element_orders;  // sorted ascending
  bool abelian = true;

  /// Short name when the fingerprint pins the class ("1", "Z4", "Z2xZ2"), else a summary.
  std::string describe() const;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint iso_fingerprint(const AbstractGroup& g);
Fingerprint iso_fingerprint(const Subgroup& g);

/// Exact isomorphism by backtracking on generator images. Only meant for small orders.
bool are_isomorphic_exact(const AbstractGroup& a, const AbstractGroup& b);

/// Fingerprint comparison, refined by the exact test when both orders are <= kExactIsomorphismLimit.
bool same_isomorphism_class(const AbstractGroup& a, const AbstractGroup& b);

}  // namespace suborb
