#include "nkinf/nonproper.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>

#include "nkinf/modular.hpp"

namespace nkinf {

std::vector<std::string> ValueSet::flags() const {
  std::vector<std::string> out;
  if (vertical_component) out.emplace_back("vertical_component");
  if (empty_curve) out.emplace_back("empty_curve");
  return out;
}

ValueSet make_value_set(const UnivariatePolynomial& rho, double tolerance) {
  if (rho.is_zero()) throw std::invalid_argument("value set from the zero polynomial");
  ValueSet vs;
  vs.rho = squarefree_part(rho);
  if (vs.rho.degree() >= 1) {
    vs.rational_roots = rational_roots(vs.rho);
    auto approx = approx_roots(vs.rho, tolerance);
    vs.approx_roots = std::move(approx.roots);
    vs.approx_converged = approx.converged;
  }
  return vs;
}

GraphIdeal graph_ideal(const QIdeal& curve, const QPolynomial& f) {
  if (!same_ring(f.ring_ptr(), curve.ring_ptr())) throw RingMismatch();
  const auto& ring = curve.ring();
  auto extended = extend_ring(ring, ring.size(), ring.fresh_name("z"));
  std::size_t z = ring.size();
  std::vector<QPolynomial> gens;
  for (const auto& g : curve.generators()) gens.push_back(embed(g, extended));
  gens.push_back(embed(f, extended) - QPolynomial::variable(extended, z));
  return {QIdeal(extended, std::move(gens)), z};
}

namespace {

template <class Field>
struct PlaneImage {
  bool unit = false;
  int dimension = 0;
  std::vector<Polynomial<Field>> basis;
  std::vector<Monomial> leading;
  std::vector<Monomial> grevlex_leading;
};

template <class Field>
PlaneImage<Field> plane_image(const Ideal<Field>& graph, std::span<const std::size_t> tail) {
  std::size_t n = graph.ring().size();
  // A grevlex basis is cheap and a much better starting point for the block
  // elimination than the raw generators. The lex basis of the resulting plane
  // ideal (x_var > z) is then a small two-variable problem.
  auto pre = buchberger(graph, MonomialOrder::grevlex(n));
  PlaneImage<Field> out;
  out.unit = pre.is_unit();
  out.dimension = ideal_dimension(pre);
  out.grevlex_leading.assign(pre.leading_monomials().begin(), pre.leading_monomials().end());
  if (out.unit || out.dimension > 1) return out;
  std::vector<Polynomial<Field>> start(pre.elements().begin(), pre.elements().end());
  auto gb = buchberger(Ideal<Field>(graph.ring_ptr(), std::move(start)), MonomialOrder::block_elimination(n, tail));
  auto lex = buchberger(Ideal<Field>(graph.ring_ptr(), elimination_ideal(gb, tail)), MonomialOrder::elimination(n, tail));
  out.basis.assign(lex.elements().begin(), lex.elements().end());
  out.leading.assign(lex.leading_monomials().begin(), lex.leading_monomials().end());
  return out;
}

// Normal forms of monomials modulo a basis, built up one variable at a time.
class NormalForms {
 public:
  explicit NormalForms(const GroebnerBasis<PrimeField>& basis) : basis_(basis) {}

  const Polynomial<PrimeField>& of(const Monomial& m) {
    if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    const auto& ring = basis_.ring_ptr();
    Polynomial<PrimeField> value = Polynomial<PrimeField>::one(ring);
    if (!m.is_one()) {
      std::size_t v = 0;
      while (m[v] == 0) ++v;
      Monomial step = Monomial::variable(v);
      value = normal_form(of(m / step).shifted(step, ring->field().one()), basis_);
    } else {
      value = normal_form(value, basis_);
    }
    return cache_.emplace(m, std::move(value)).first->second;
  }

 private:
  const GroebnerBasis<PrimeField>& basis_;
  std::map<Monomial, Polynomial<PrimeField>> cache_;
};

// The monic element with leading monomial support[0] and the remaining
// support that lies in the ideal, found by linear algebra on normal forms;
// nullopt when it is not unique (an unlucky prime).
std::optional<Polynomial<PrimeField>> solve_on_support(NormalForms& nf, const RingPtr<PrimeField>& ring,
                                                       std::span<const Monomial> support) {
  const auto& field = ring->field();
  std::size_t k = support.size() - 1;
  std::map<Monomial, std::size_t> row_of;
  std::vector<std::vector<PrimeFieldElement>> rows;  // k unknowns, then the right-hand side
  auto row = [&](const Monomial& m) -> std::vector<PrimeFieldElement>& {
    auto [it, fresh] = row_of.emplace(m, rows.size());
    if (fresh) rows.emplace_back(k + 1, field.zero());
    return rows[it->second];
  };
  for (const auto& t : nf.of(support[0]).terms()) row(t.monomial)[k] -= t.coeff;
  for (std::size_t j = 0; j < k; ++j) {
    for (const auto& t : nf.of(support[j + 1]).terms()) row(t.monomial)[j] += t.coeff;
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < k; ++col) {
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                              [&](const auto& r) { return !r[col].is_zero(); });
    if (pivot == rows.end()) return std::nullopt;
    std::swap(rows[rank], *pivot);
    auto inv = rows[rank][col].inverse();
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      auto factor = rows[i][col];
      for (std::size_t c = col; c <= k; ++c) rows[i][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (!rows[i][k].is_zero()) return std::nullopt;
  }
  std::vector<Polynomial<PrimeField>::Term> terms{{support[0], field.one()}};
  for (std::size_t j = 0; j < k; ++j) {
    if (!rows[j][k].is_zero()) terms.push_back({support[j + 1], rows[j][k]});
  }
  if (terms.size() != support.size()) return std::nullopt;
  return Polynomial<PrimeField>(ring, std::move(terms));
}

// Shape of the plane basis learned from a fully computed prime.
struct PlaneShape {
  std::vector<Monomial> grevlex_leading;
  std::vector<std::vector<Monomial>> supports;  // leading monomial first
};

// The plane image modulo another prime from its grevlex basis and the known
// shape; nullopt sends the caller back to the full computation.
std::optional<PlaneImage<PrimeField>> plane_image_from_shape(const Ideal<PrimeField>& graph, const PlaneShape& shape,
                                                            const std::vector<Monomial>& leading) {
  auto pre = buchberger(graph, MonomialOrder::grevlex(graph.ring().size()));
  if (!std::ranges::equal(pre.leading_monomials(), shape.grevlex_leading)) return std::nullopt;
  NormalForms nf(pre);
  PlaneImage<PrimeField> out;
  out.dimension = ideal_dimension(pre);
  out.grevlex_leading = shape.grevlex_leading;
  out.leading = leading;
  for (const auto& support : shape.supports) {
    auto element = solve_on_support(nf, graph.ring_ptr(), support);
    if (!element) return std::nullopt;
    out.basis.push_back(std::move(*element));
  }
  return out;
}

std::array<std::size_t, 2> plane_tail(const GraphIdeal& graph, std::size_t var) {
  if (var >= graph.ideal.ring().size() || var == graph.z_index) throw std::out_of_range("fiber variable out of range");
  return {var, graph.z_index};
}

struct Signature {
  bool unit;
  int dimension;
  std::vector<Monomial> leading;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Images of the graph ideal for a run of primes, grouped by the shape of
// the reduced basis; a prime where the shape differs from the majority is
// unlucky and its group never reaches a verified reconstruction.
struct ModularGroup {
  Signature signature;
  ModularLift lift;
  std::optional<std::vector<QPolynomial>> candidate;
};

}  // namespace

PlaneElimination eliminate_to_plane_exact(const GraphIdeal& graph, std::size_t var) {
  auto tail = plane_tail(graph, var);
  auto image = plane_image(graph.ideal, tail);
  return {std::move(image.basis), image.dimension, image.unit};
}

PlaneElimination eliminate_to_plane(const GraphIdeal& graph, std::size_t var, const ModularOptions& options) {
  auto tail = plane_tail(graph, var);
  const auto& ring = graph.ideal.ring_ptr();
  PrimeSequence primes;
  std::vector<ModularGroup> groups;
  std::optional<PlaneShape> shape;
  std::vector<Monomial> shape_leading;
  for (std::size_t used = 0; used < options.max_primes; ++used) {
    std::uint64_t p = primes.next();
    auto pring = make_ring<PrimeField>(ring->names(), PrimeField(p));
    std::vector<Polynomial<PrimeField>> gens;
    try {
      for (const auto& g : graph.ideal.generators()) gens.push_back(reduce_mod(g, pring));
    } catch (const std::domain_error&) {
      continue;  // p divides a denominator
    }
    Ideal<PrimeField> reduced(pring, std::move(gens));
    std::optional<PlaneImage<PrimeField>> fast;
    if (shape) fast = plane_image_from_shape(reduced, *shape, shape_leading);
    auto image = fast ? std::move(*fast) : plane_image(reduced, tail);
    Signature sig{image.unit, image.dimension, image.leading};
    if (!shape && !sig.unit && sig.dimension <= 1) {
      // Supports in the plane order (leading monomial first), as the images are stored.
      PlaneShape learned{image.grevlex_leading, {}};
      for (std::size_t i = 0; i < image.basis.size(); ++i) {
        std::vector<Monomial> support{image.leading[i]};
        for (const auto& t : image.basis[i].terms()) {
          if (t.monomial != image.leading[i]) support.push_back(t.monomial);
        }
        learned.supports.push_back(std::move(support));
      }
      shape = std::move(learned);
      shape_leading = image.leading;
    }
    auto group = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.signature == sig; });
    if (group == groups.end()) {
      groups.push_back({sig, ModularLift(ring), std::nullopt});
      group = std::prev(groups.end());
    }
    // Unit and higher-dimensional images carry no basis; two agreeing primes settle them.
    if ((sig.unit || sig.dimension > 1) && group->lift.primes() >= 1) {
      return {{}, sig.dimension, sig.unit};
    }
    auto accept = [&](const std::vector<QPolynomial>& lifted) {
      PlaneElimination out{{}, sig.dimension, sig.unit};
      for (const auto& q : lifted) out.basis.push_back(q.canonical());
      return out;
    };
    if (group->candidate && options.certificate == nullptr) {
      bool agrees = true;
      try {
        for (std::size_t i = 0; i < image.basis.size() && agrees; ++i) {
          agrees = reduce_mod((*group->candidate)[i], pring) == image.basis[i];
        }
      } catch (const std::domain_error&) {
        agrees = false;
      }
      if (agrees) return accept(*group->candidate);
    }
    group->lift.add(image.basis);
    group->candidate = group->lift.reconstruct();
    if (group->candidate && options.certificate != nullptr) {
      bool member = std::all_of(group->candidate->begin(), group->candidate->end(),
                                [&](const QPolynomial& q) { return normal_form(q, *options.certificate).is_zero(); });
      if (member) return accept(*group->candidate);
    }
  }
  throw std::runtime_error("modular elimination did not stabilize within " + std::to_string(options.max_primes) +
                           " primes");
}

namespace {

QPolynomial select_relation(const PlaneElimination& plane, std::size_t var) {
  if (plane.dimension > 1) throw NotACurve(plane.dimension);
  if (plane.basis.empty()) throw NotACurve(plane.dimension);
  const QPolynomial* best = nullptr;
  for (const auto& p : plane.basis) {
    int d = p.degree_in(var);
    if (d >= 1 && (best == nullptr || d < best->degree_in(var))) best = &p;
  }
  if (best != nullptr) return *best;
  return plane.basis.front();
}

// Content of p as a polynomial in `var` over Q[z].
UnivariatePolynomial z_content(const QPolynomial& p, std::size_t var, std::size_t z) {
  int top = p.degree_in(var);
  std::vector<std::vector<Rational>> by_power(static_cast<std::size_t>(top) + 1);
  for (const auto& t : p.terms()) {
    auto& row = by_power[t.monomial[var]];
    if (row.size() <= t.monomial[z]) row.resize(t.monomial[z] + 1, Rational(0L));
    row[t.monomial[z]] = t.coeff;
  }
  UnivariatePolynomial g;
  for (auto& row : by_power) {
    UnivariatePolynomial c(std::move(row));
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.canonical() : gcd_univar(g, c);
  }
  return g;
}

}  // namespace

QPolynomial fiber_relation(const GraphIdeal& graph, std::size_t var) {
  return select_relation(eliminate_to_plane(graph, var), var);
}

UnivariatePolynomial leading_coeff_in(const QPolynomial& p, std::size_t var, std::size_t z_index, bool* vertical) {
  if (p.is_zero()) throw std::invalid_argument("leading coefficient of the zero polynomial");
  int top = p.degree_in(var);
  std::vector<Rational> coeffs;
  for (const auto& t : p.terms()) {
    for (std::size_t v = 0; v < p.ring().size(); ++v) {
      if (v != var && v != z_index && t.monomial[v] != 0) {
        throw std::invalid_argument("polynomial involves variables other than the fiber pair");
      }
    }
    if (static_cast<int>(t.monomial[var]) != top) continue;
    std::size_t e = t.monomial[z_index];
    if (coeffs.size() <= e) coeffs.resize(e + 1, Rational(0L));
    coeffs[e] += t.coeff;
  }
  if (top == 0 && vertical != nullptr) *vertical = true;
  return UnivariatePolynomial(std::move(coeffs));
}

ValueSet nonproperness_values(const QIdeal& curve, const QPolynomial& f, const NonpropernessOptions& options) {
  auto graph = graph_ideal(curve, f);
  std::vector<std::size_t> coords = options.coordinates;
  if (coords.empty()) {
    for (std::size_t i = 0; i < curve.ring().size(); ++i) coords.push_back(i);
  }

  // Emptiness and dimension are decided exactly by one grevlex basis, which
  // then certifies the modular plane bases.
  auto certificate = buchberger(graph.ideal, MonomialOrder::grevlex(graph.ideal.ring().size()));
  if (certificate.is_unit()) {
    ValueSet empty;
    empty.empty_curve = true;
    return empty;
  }
  if (int dim = ideal_dimension(certificate); dim > 1) throw NotACurve(dim);

  std::vector<PlaneElimination> planes(coords.size());
  for_each_index(coords.size(), options.execution, [&](std::size_t k) {
    planes[k] = options.modular ? eliminate_to_plane(graph, coords[k], {.certificate = &certificate})
                                : eliminate_to_plane_exact(graph, coords[k]);
  });

  UnivariatePolynomial product{1};
  bool vertical = false;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const auto& plane = planes[k];
    std::size_t var = coords[k];
    QPolynomial relation = select_relation(plane, var);
    bool pure_z = false;
    auto a0 = leading_coeff_in(relation, var, graph.z_index, &pure_z);
    if (!pure_z) {
      if (!z_content(relation, var, graph.z_index).is_constant()) vertical = true;
      if (!a0.is_constant()) product = product * a0;
    }
    // A basis element in Q[z] alone means f takes finitely many values on
    // the whole curve.
    for (const auto& p : plane.basis) {
      if (p.degree_in(var) == 0 && !p.is_constant()) {
        product = product * leading_coeff_in(p, var, graph.z_index);
        vertical = true;
      }
    }
  }
  ValueSet out = make_value_set(product, options.tolerance);
  out.vertical_component = vertical;
  return out;
}

}  // namespace nkinf
