#include "suborb/maps.hpp"

#include <algorithm>

#include "suborb/error.hpp"

namespace suborb {

namespace {

// Generators of the domain group, or a greedy generating set when none were recorded.
std::vector<std::size_t> generator_indices(const FiniteMatrixGroup& g) {
  std::vector<std::size_t> out;
  for (const RatMatrix& m : g.generators()) out.push_back(*g.index_of(m));
  if (!out.empty() || g.order() == 1) return out;
  std::vector<std::size_t> covered{g.identity()};
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (std::find(covered.begin(), covered.end(), x) != covered.end()) continue;
    out.push_back(x);
    covered = {g.identity()};
    for (std::size_t i = 0; i < covered.size(); ++i) {
      for (std::size_t s : out) {
        const std::size_t p = g.multiply(covered[i], s);
        if (std::find(covered.begin(), covered.end(), p) == covered.end()) covered.push_back(p);
      }
    }
  }
  return out;
}

// Extends generator images along BFS words; nullopt when the words disagree.
std::optional<std::vector<std::size_t>> extend_theta(const FiniteMatrixGroup& dom, const FiniteMatrixGroup& cod,
                                                     const std::vector<std::size_t>& gens,
                                                     const std::vector<std::size_t>& images) {
  std::vector<std::size_t> theta(dom.order(), cod.order());
  theta[dom.identity()] = cod.identity();
  std::vector<std::size_t> queue{dom.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const std::size_t y = dom.multiply(queue[i], gens[s]);
      const std::size_t image = cod.multiply(theta[queue[i]], images[s]);
      if (theta[y] == cod.order()) {
        theta[y] = image;
        queue.push_back(y);
      } else if (theta[y] != image) {
        return std::nullopt;
      }
    }
  }
  if (!is_homomorphism(dom.table(), cod.table(), theta)) return std::nullopt;
  return theta;
}

bool equivariant_at(const RatMatrix& a, const Vector& b, const RatMatrix& gamma1, const RatMatrix& gamma2) {
  return gamma2 * a == a * gamma1 && gamma2 * b == b;
}

}  // namespace

EquivariantAffineMap::EquivariantAffineMap(ChartModel domain, ChartModel codomain, RatMatrix linear, Vector offset,
                                           std::vector<std::size_t> theta)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      linear_(std::move(linear)),
      offset_(std::move(offset)),
      theta_(std::move(theta)) {
  require(linear_.rows() == codomain_.dim() && linear_.cols() == domain_.dim() && offset_.size() == codomain_.dim(),
          ErrorCode::DimensionMismatch, "map shape does not match the charts");
  require(is_homomorphism(domain_.group->table(), codomain_.group->table(), theta_), ErrorCode::NotHomomorphism,
          "theta is not a homomorphism");
  for (std::size_t g = 0; g < domain_.group->order(); ++g) {
    require(equivariant_at(linear_, offset_, domain_.group->element(g), codomain_.group->element(theta_[g])),
            ErrorCode::NotEquivariant,
            "f(γx) ≠ Θ(γ)f(x) for domain element " + std::to_string(g) + " " + domain_.group->element(g).to_string());
  }
}

EquivariantAffineMap EquivariantAffineMap::from_generator_images(ChartModel domain, ChartModel codomain,
                                                                 RatMatrix linear, Vector offset,
                                                                 const std::vector<RatMatrix>& images) {
  const FiniteMatrixGroup& dom = *domain.group;
  const FiniteMatrixGroup& cod = *codomain.group;
  require(images.size() == dom.generators().size(), ErrorCode::DimensionMismatch,
          "theta needs one image per domain generator");
  std::vector<std::size_t> gens;
  std::vector<std::size_t> image_idx;
  for (std::size_t s = 0; s < images.size(); ++s) {
    gens.push_back(*dom.index_of(dom.generators()[s]));
    auto idx = cod.index_of(images[s]);
    require(idx.has_value(), ErrorCode::NotHomomorphism, "theta image " + images[s].to_string() + " is not in Γ₂");
    image_idx.push_back(*idx);
  }
  auto theta = extend_theta(dom, cod, gens, image_idx);
  require(theta.has_value(), ErrorCode::NotHomomorphism, "generator images do not extend to a homomorphism");
  return {std::move(domain), std::move(codomain), std::move(linear), std::move(offset), std::move(*theta)};
}

EquivariantAffineMap EquivariantAffineMap::with_inferred_theta(ChartModel domain, ChartModel codomain,
                                                               RatMatrix linear, Vector offset) {
  const FiniteMatrixGroup& dom = *domain.group;
  const FiniteMatrixGroup& cod = *codomain.group;
  require(linear.rows() == cod.dim() && linear.cols() == dom.dim() && offset.size() == cod.dim(),
          ErrorCode::DimensionMismatch, "map shape does not match the charts");
  const std::vector<std::size_t> gens = generator_indices(dom);

  std::vector<std::vector<std::size_t>> options(gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s) {
    for (std::size_t c = 0; c < cod.order(); ++c) {
      if (equivariant_at(linear, offset, dom.element(gens[s]), cod.element(c))) options[s].push_back(c);
    }
    require(!options[s].empty(), ErrorCode::NotEquivariant,
            "no element of Γ₂ matches generator " + dom.element(gens[s]).to_string());
  }

  std::vector<std::size_t> choice(gens.size());
  std::optional<std::vector<std::size_t>> found;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gens.size()) {
      found = extend_theta(dom, cod, gens, choice);
      return found.has_value();
    }
    for (std::size_t c : options[depth]) {
      choice[depth] = c;
      if (self(self, depth + 1)) return true;
    }
    return false;
  };
  require(search(search, 0), ErrorCode::NotHomomorphism, "no homomorphism makes the map equivariant");
  return {std::move(domain), std::move(codomain), std::move(linear), std::move(offset), std::move(*found)};
}

GroupHom EquivariantAffineMap::theta_hom() const {
  return GroupHom(domain_.group->table(), codomain_.group->table(), theta_);
}

AffineSubspace EquivariantAffineMap::image() const {
  return affine_image(linear_, offset_, AffineSubspace::whole(domain_.dim()));
}

EquivariantAffineMap compose(const EquivariantAffineMap& outer, const EquivariantAffineMap& inner) {
  require(same_chart(inner.codomain(), outer.domain()), ErrorCode::ChartMismatch,
          "inner codomain differs from outer domain");
  std::vector<std::size_t> theta(inner.domain().group->order());
  for (std::size_t g = 0; g < theta.size(); ++g) theta[g] = outer.theta(inner.theta(g));
  return {inner.domain(), outer.codomain(), outer.linear() * inner.linear(),
          outer.linear() * inner.offset() + outer.offset(), std::move(theta)};
}

std::size_t rank_at(const EquivariantAffineMap& f, const Vector& x) {
  require(x.size() == f.domain().dim(), ErrorCode::DimensionMismatch, "point has wrong length");
  return f.linear().rank();
}

bool is_immersion(const EquivariantAffineMap& f) { return f.linear().rank() == f.domain().dim(); }
bool is_submersion(const EquivariantAffineMap& f) { return f.linear().rank() == f.codomain().dim(); }

QuotientInjectivity check_quotient_injective(const EquivariantAffineMap& f) {
  const FiniteMatrixGroup& g1 = *f.domain().group;
  const FiniteMatrixGroup& g2 = *f.codomain().group;
  const std::size_t n1 = g1.dim();
  const RatMatrix& a = f.linear();
  const RatMatrix ident = RatMatrix::identity(n1);

  for (std::size_t gamma = 0; gamma < g2.order(); ++gamma) {
    const RatMatrix& gm = g2.element(gamma);
    // A x + b = γ (A y + b)
    auto solutions = solve_affine(a.hstack((gm * a) * Rational(-1)), gm * f.offset() - f.offset());
    if (!solutions) continue;
    // By irreducibility of affine spaces the solution set must lie in a single {x = γ₁ y}.
    const bool covered = std::any_of(g1.elements().begin(), g1.elements().end(), [&](const RatMatrix& h) {
      const auto t = solve_affine(ident.hstack(h * Rational(-1)), zero_vector(n1));
      return subspace_contained_in(*solutions, *t);
    });
    if (!covered) return {false, gamma, std::move(*solutions)};
  }
  return {};
}

bool is_embedding(const EquivariantAffineMap& f) {
  return is_immersion(f) && f.theta_hom().is_injective() && check_quotient_injective(f).injective;
}

ProductChart product_chart(const ChartModel& left, const ChartModel& right, std::size_t max_order) {
  const FiniteMatrixGroup& g1 = *left.group;
  const FiniteMatrixGroup& g2 = *right.group;
  require(g1.order() * g2.order() <= max_order, ErrorCode::GroupTooLarge,
          "product group order " + std::to_string(g1.order() * g2.order()) + " exceeds " + std::to_string(max_order));

  std::vector<RatMatrix> elements;
  elements.reserve(g1.order() * g2.order());
  for (const RatMatrix& a : g1.elements())
    for (const RatMatrix& b : g2.elements()) elements.push_back(RatMatrix::block_diagonal(a, b));

  std::vector<RatMatrix> generators;
  for (const RatMatrix& a : g1.generators())
    generators.push_back(RatMatrix::block_diagonal(a, RatMatrix::identity(g2.dim())));
  for (const RatMatrix& b : g2.generators())
    generators.push_back(RatMatrix::block_diagonal(RatMatrix::identity(g1.dim()), b));

  ProductChart out{left, right, ChartModel{FiniteMatrixGroup::from_elements(elements, g1.dim() + g2.dim(), generators)},
                   {}, {}};
  out.components.resize(elements.size());
  out.pair_index.resize(elements.size());
  for (std::size_t i = 0; i < g1.order(); ++i) {
    for (std::size_t j = 0; j < g2.order(); ++j) {
      const std::size_t idx = *out.combined.group->index_of(elements[i * g2.order() + j]);
      out.pair_index[i * g2.order() + j] = idx;
      out.components[idx] = {i, j};
    }
  }
  return out;
}

EquivariantAffineMap product_map(const EquivariantAffineMap& f1, const EquivariantAffineMap& f2,
                                 const ProductChart& domain, const ProductChart& codomain) {
  require(same_chart(domain.left, f1.domain()) && same_chart(domain.right, f2.domain()) &&
              same_chart(codomain.left, f1.codomain()) && same_chart(codomain.right, f2.codomain()),
          ErrorCode::ChartMismatch, "product charts do not match the factor maps");
  Vector offset = f1.offset();
  offset.insert(offset.end(), f2.offset().begin(), f2.offset().end());
  std::vector<std::size_t> theta(domain.combined.group->order());
  for (std::size_t idx = 0; idx < theta.size(); ++idx) {
    const auto [i, j] = domain.components[idx];
    theta[idx] = codomain.index_of(f1.theta(i), f2.theta(j));
  }
  return {domain.combined, codomain.combined, RatMatrix::block_diagonal(f1.linear(), f2.linear()), std::move(offset),
          std::move(theta)};
}

Subgroup rebase(const Subgroup& s, const ChartModel& chart) {
  if (s.parent() == chart.group) return s;
  require(s.parent()->same_elements(*chart.group), ErrorCode::ChartMismatch, "subgroup of a different chart group");
  return Subgroup::from_members(chart.group, s.members());
}

}  // namespace suborb
