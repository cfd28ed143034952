#pragma once

// Buchberger's algorithm over an exact field with Gebauer-Moeller pair
// pruning, normal forms, lex elimination and combinatorial dimension.
//
// All heavy lifting happens in the "working" ring whose variables are the
// input variables permuted so that the requested lex order becomes the
// natural one; polynomials there are stored sorted by that order and the
// front term is the leading term.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nkinf/polynomial.hpp"

namespace nkinf {

template <class Field>
class Ideal {
 public:
  explicit Ideal(RingPtr<Field> ring) : ring_(std::move(ring)) {}

  /// Zero generators are dropped.
  Ideal(RingPtr<Field> ring, std::vector<Polynomial<Field>> generators) : ring_(std::move(ring)) {
    for (auto& g : generators) {
      if (!same_ring(g.ring_ptr(), ring_)) throw RingMismatch();
      if (!g.is_zero()) generators_.push_back(std::move(g));
    }
  }

  const RingPtr<Field>& ring_ptr() const { return ring_; }
  const Ring<Field>& ring() const { return *ring_; }
  std::span<const Polynomial<Field>> generators() const { return generators_; }

 private:
  RingPtr<Field> ring_;
  std::vector<Polynomial<Field>> generators_;
};

/// Reduced Groebner basis with the order it was computed under. Elements are
/// canonical (primitive integer with positive leading coefficient over Q,
/// monic over F_p) and sorted by increasing leading monomial.
template <class Field>
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr<Field> ring, MonomialOrder order, std::vector<Polynomial<Field>> elements,
                std::vector<Monomial> leading)
      : ring_(std::move(ring)), order_(std::move(order)), elements_(std::move(elements)), leading_(std::move(leading)) {}

  const RingPtr<Field>& ring_ptr() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  std::span<const Polynomial<Field>> elements() const { return elements_; }
  /// Leading monomials under order(), parallel to elements().
  std::span<const Monomial> leading_monomials() const { return leading_; }
  bool is_unit() const { return elements_.size() == 1 && elements_[0].is_constant(); }
  bool is_zero_ideal() const { return elements_.empty(); }

 private:
  RingPtr<Field> ring_;
  MonomialOrder order_;
  std::vector<Polynomial<Field>> elements_;
  std::vector<Monomial> leading_;
};

enum class PairSelection {
  normal,  // smallest lcm under the active order
  sugar,   // smallest sugar degree, then smallest lcm
};

struct BuchbergerOptions {
  PairSelection selection = PairSelection::normal;
  /// Reduction steps between content removals over Q.
  int content_interval = 4;
};

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t basis_peak = 0;
};

template <class Field>
Monomial leading_monomial(const Polynomial<Field>& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading monomial of the zero polynomial");
  if (order.is_identity() && order.working_order() == p.ring().term_order()) return p.leading_term().monomial;
  const Monomial* best = &p.terms().front().monomial;
  for (const auto& t : p.terms()) {
    if (order.compare(t.monomial, *best) > 0) best = &t.monomial;
  }
  return *best;
}

namespace detail {

template <class Field>
using TermVec = std::vector<typename Polynomial<Field>::Term>;

/// Ring whose variable k is variable perm[k] of `ring`.
template <class Field>
RingPtr<Field> permuted_ring(const RingPtr<Field>& ring, const MonomialOrder& order) {
  if (order.size() != ring->size()) throw std::invalid_argument("order size does not match ring");
  if (order.is_identity() && order.working_order() == ring->term_order()) return ring;
  std::vector<std::string> names;
  for (std::size_t v : order.permutation()) names.push_back(ring->name(v));
  return make_ring(std::move(names), ring->field(), order.working_order());
}

template <class Field>
Polynomial<Field> to_working(const Polynomial<Field>& p, const RingPtr<Field>& working, const MonomialOrder& order) {
  if (working == p.ring_ptr()) return p;
  std::vector<std::size_t> map(order.size());
  auto perm = order.permutation();
  for (std::size_t k = 0; k < perm.size(); ++k) map[perm[k]] = k;
  return map_variables(p, working, map);
}

template <class Field>
Polynomial<Field> from_working(const Polynomial<Field>& p, const RingPtr<Field>& original,
                               const MonomialOrder& order) {
  if (original == p.ring_ptr()) return p;
  auto perm = order.permutation();
  return map_variables(p, original, std::vector<std::size_t>(perm.begin(), perm.end()));
}

template <class Field>
void strip_content(const Field& field, TermVec<Field>& done, TermVec<Field>& work, std::size_t head,
                   typename Field::Element& scale) {
  std::vector<typename Field::Element> coeffs;
  coeffs.reserve(done.size() + work.size() - head);
  for (const auto& t : done) coeffs.push_back(t.coeff);
  for (std::size_t i = head; i < work.size(); ++i) coeffs.push_back(work[i].coeff);
  if (coeffs.empty()) return;
  auto s = field.canonical_scale(coeffs);
  if (s.is_one()) return;
  for (auto& t : done) t.coeff *= s;
  for (std::size_t i = head; i < work.size(); ++i) work[i].coeff *= s;
  scale *= s;
}

/// Heap division (Johnson) for fields where division is cheap: the dividend
/// and every multiple c * m * g subtracted so far are merged lazily through
/// a max-heap of their next terms, so no intermediate polynomial is built.
template <class Field>
Polynomial<Field> reduce_heap(const Polynomial<Field>& p, std::span<const Polynomial<Field>* const> divisors) {
  using Element = typename Field::Element;
  struct Source {
    std::span<const typename Polynomial<Field>::Term> terms;
    Monomial shift;
    Element factor;  // term k contributes factor * terms[k].coeff at shift * terms[k].monomial
  };
  // The key determines the monomial, so entries carry only the key; the
  // unkeyed fallback (very wide rings) compares monomials directly.
  struct Entry {
    TermOrder::Key key;
    std::uint32_t source;
    std::uint32_t position;
  };
  const Field& field = p.field();
  const auto& order = p.ring().term_order();
  std::size_t nvars = p.ring().size();
  bool keyed = order.key_lanes(nvars) <= TermOrder::kKeyLanes;
  std::vector<Source> sources;
  sources.push_back({p.terms(), Monomial{}, field.one()});
  auto monomial_of = [&](const Entry& e) {
    const auto& s = sources[e.source];
    return s.terms[e.position].monomial * s.shift;
  };
  auto below = [&](const Entry& a, const Entry& b) {
    if (keyed) return a.key < b.key;
    return order.compare(monomial_of(a), monomial_of(b)) < 0;
  };
  auto same = [&](const Entry& a, const Entry& b) { return keyed ? a.key == b.key : monomial_of(a) == monomial_of(b); };
  std::vector<Entry> heap;
  auto push = [&](std::size_t src, std::size_t pos) {
    const auto& s = sources[src];
    if (pos >= s.terms.size()) return;
    Entry e{{}, static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(pos)};
    if (keyed) e.key = order.key(s.terms[pos].monomial * s.shift, nvars);
    heap.push_back(e);
    std::push_heap(heap.begin(), heap.end(), below);
  };
  push(0, 0);
  std::vector<typename Polynomial<Field>::Term> done;
  while (!heap.empty()) {
    Entry top = heap.front();
    Monomial m = monomial_of(top);
    Element c = field.zero();
    while (!heap.empty() && same(heap.front(), top)) {
      std::pop_heap(heap.begin(), heap.end(), below);
      Entry e = heap.back();
      heap.pop_back();
      const auto& s = sources[e.source];
      c += s.factor * s.terms[e.position].coeff;
      push(e.source, e.position + 1);
    }
    if (c.is_zero()) continue;
    const Polynomial<Field>* divisor = nullptr;
    for (const auto* g : divisors) {
      if (g->leading_term().monomial.divides(m)) {
        divisor = g;
        break;
      }
    }
    if (divisor == nullptr) {
      done.push_back({m, std::move(c)});
      continue;
    }
    const auto& lead = divisor->leading_term();
    sources.push_back({divisor->terms(), m / lead.monomial, -(c / lead.coeff)});
    push(sources.size() - 1, 1);
  }
  return Polynomial<Field>::from_sorted(p.ring_ptr(), std::move(done));
}

/// Full reduction in the working ring. Returns r with r = scale * p - (ideal
/// element); r has no term divisible by a divisor's leading monomial.
template <class Field>
std::pair<Polynomial<Field>, typename Field::Element> reduce(const Polynomial<Field>& p,
                                                             std::span<const Polynomial<Field>* const> divisors,
                                                             int content_interval = 4) {
  using Element = typename Field::Element;
  const Field& field = p.field();
  if constexpr (!Field::kStripsContent) {
    return {reduce_heap(p, divisors), p.field().one()};
  }
  Element scale = field.one();
  TermVec<Field> work(p.terms().begin(), p.terms().end());
  TermVec<Field> done;
  std::size_t head = 0;
  int steps = 0;
  TermVec<Field> next;
  while (head < work.size()) {
    const auto& lead = work[head];
    const Polynomial<Field>* divisor = nullptr;
    for (const auto* g : divisors) {
      if (g->leading_term().monomial.divides(lead.monomial)) {
        divisor = g;
        break;
      }
    }
    if (divisor == nullptr) {
      done.push_back(std::move(work[head]));
      ++head;
      continue;
    }
    auto [a, b] = field.cofactors(lead.coeff, divisor->leading_term().coeff);
    Monomial shift = lead.monomial / divisor->leading_term().monomial;
    auto gterms = divisor->terms();
    bool unit = a.is_one();
    const auto& order = p.ring().term_order();
    // work[head+1..] * a  -  shift * b * gterms[1..]
    next.clear();
    next.reserve(work.size() - head + gterms.size());
    std::size_t i = head + 1;
    std::size_t j = 1;
    while (i < work.size() || j < gterms.size()) {
      if (j < gterms.size()) {
        Monomial gm = gterms[j].monomial * shift;
        auto c = i == work.size() ? std::strong_ordering::greater : order.compare(gm, work[i].monomial);
        if (c > 0) {
          next.push_back({gm, -(b * gterms[j].coeff)});
          ++j;
          continue;
        }
        if (c == 0) {
          Element c = unit ? work[i].coeff : work[i].coeff * a;
          c -= b * gterms[j].coeff;
          if (!c.is_zero()) next.push_back({gm, std::move(c)});
          ++i;
          ++j;
          continue;
        }
      }
      if (unit) {
        next.push_back(std::move(work[i]));
      } else {
        next.push_back({work[i].monomial, work[i].coeff * a});
      }
      ++i;
    }
    std::swap(work, next);
    head = 0;
    if (!unit) {
      for (auto& t : done) t.coeff *= a;
      scale *= a;
    }
    if constexpr (Field::kStripsContent) {
      if (++steps % content_interval == 0) strip_content(field, done, work, head, scale);
    }
  }
  return {Polynomial<Field>::from_sorted(p.ring_ptr(), std::move(done)), scale};
}

/// Fraction-free S-polynomial in the working ring.
template <class Field>
Polynomial<Field> s_polynomial(const Polynomial<Field>& p, const Polynomial<Field>& q) {
  const auto& lp = p.leading_term();
  const auto& lq = q.leading_term();
  Monomial l = lp.monomial.lcm(lq.monomial);
  auto [a, b] = p.field().cofactors(lp.coeff, lq.coeff);
  // a * lc(p) == b * lc(q)
  return p.shifted(l / lp.monomial, a) - q.shifted(l / lq.monomial, b);
}

template <class Field>
class BuchbergerKernel {
 public:
  BuchbergerKernel(BuchbergerOptions options, BuchbergerStats* stats) : options_(options), stats_(stats) {}

  /// Inputs live in the working ring; returns the reduced basis sorted by
  /// increasing leading monomial.
  std::vector<Polynomial<Field>> run(std::span<const Polynomial<Field>> inputs) {
    if (!inputs.empty()) order_ = inputs.front().ring().term_order();
    for (const auto& f : inputs) {
      if (f.is_zero()) continue;
      auto h = reduce_by_active(f);
      if (h.is_zero()) continue;
      if (h.is_constant()) return {Polynomial<Field>::one(h.ring_ptr())};
      insert(std::move(h));
    }
    while (!pairs_.empty()) {
      auto it = select();
      Pair pair = *it;
      *it = pairs_.back();
      pairs_.pop_back();
      if (stats_) ++stats_->pairs_reduced;
      auto s = s_polynomial(polys_[pair.i], polys_[pair.j]);
      auto h = reduce_by_active(s);
      if (h.is_zero()) {
        if (stats_) ++stats_->zero_reductions;
        continue;
      }
      if (h.is_constant()) return {Polynomial<Field>::one(h.ring_ptr())};
      insert(std::move(h));
    }
    return finish();
  }

 private:
  struct Pair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
    int sugar;
  };

  Polynomial<Field> reduce_by_active(const Polynomial<Field>& f) {
    std::vector<const Polynomial<Field>*> divisors;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) divisors.push_back(&polys_[k]);
    }
    return reduce(f, std::span<const Polynomial<Field>* const>(divisors), options_.content_interval).first.canonical();
  }

  typename std::vector<Pair>::iterator select() {
    auto better = [this](const Pair& a, const Pair& b) {
      if (options_.selection == PairSelection::sugar && a.sugar != b.sugar) return a.sugar < b.sugar;
      if (a.lcm != b.lcm) return order_.compare(a.lcm, b.lcm) < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    };
    return std::min_element(pairs_.begin(), pairs_.end(), better);
  }

  // Gebauer-Moeller installation of a new basis element.
  void insert(Polynomial<Field> h) {
    std::size_t hi = polys_.size();
    Monomial lh = h.leading_term().monomial;
    int sugar_h = h.total_degree();
    polys_.push_back(std::move(h));
    active_.push_back(false);
    sugar_.push_back(sugar_h);

    struct Candidate {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Candidate> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active_[g]) continue;
      const Monomial& lg = polys_[g].leading_term().monomial;
      c.push_back({g, lh.lcm(lg), lh.coprime(lg)});
    }
    if (stats_) stats_->pairs_considered += c.size();

    // Chain criterion among the new pairs.
    std::vector<Candidate> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool keep = c[k].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < c.size() && keep; ++m) {
          if (c[m].lcm.divides(c[k].lcm)) keep = false;
        }
        for (std::size_t m = 0; m < d.size() && keep; ++m) {
          if (d[m].lcm.divides(c[k].lcm)) keep = false;
        }
      }
      if (keep) d.push_back(c[k]);
    }

    // Old pairs made redundant by the new leading monomial.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + d.size());
    for (const auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && lh.lcm(polys_[p.i].leading_term().monomial) != p.lcm &&
                  lh.lcm(polys_[p.j].leading_term().monomial) != p.lcm;
      if (!drop) kept.push_back(p);
    }
    // Product criterion on the survivors.
    for (const auto& cand : d) {
      if (cand.coprime) continue;
      const auto& g = polys_[cand.g];
      int sugar = std::max(sugar_[cand.g] + (cand.lcm.degree() - g.leading_term().monomial.degree()),
                           sugar_h + (cand.lcm.degree() - lh.degree()));
      kept.push_back({cand.g, hi, cand.lcm, sugar});
    }
    pairs_ = std::move(kept);

    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && lh.divides(polys_[g].leading_term().monomial)) active_[g] = false;
    }
    active_[hi] = true;
    if (stats_) {
      auto live = static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true));
      stats_->basis_peak = std::max(stats_->basis_peak, live);
    }
  }

  std::vector<Polynomial<Field>> finish() {
    std::vector<Polynomial<Field>> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) basis.push_back(polys_[k]);
    }
    // Minimalize: drop elements whose leading monomial another one divides.
    std::vector<Polynomial<Field>> minimal;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Monomial& lk = basis[k].leading_term().monomial;
      bool redundant = false;
      for (std::size_t m = 0; m < basis.size() && !redundant; ++m) {
        if (m == k) continue;
        const Monomial& lm = basis[m].leading_term().monomial;
        if (lm.divides(lk) && (lm != lk || m < k)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis[k]);
    }
    std::sort(minimal.begin(), minimal.end(), [this](const auto& a, const auto& b) {
      return order_.compare(a.leading_term().monomial, b.leading_term().monomial) < 0;
    });
    std::vector<Polynomial<Field>> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<const Polynomial<Field>*> others;
      for (std::size_t m = 0; m < minimal.size(); ++m) {
        if (m != k) others.push_back(&minimal[m]);
      }
      reduced.push_back(
          reduce(minimal[k], std::span<const Polynomial<Field>* const>(others), options_.content_interval)
              .first.canonical());
    }
    return reduced;
  }

  BuchbergerOptions options_;
  BuchbergerStats* stats_;
  TermOrder order_;
  std::vector<Polynomial<Field>> polys_;
  std::vector<bool> active_;
  std::vector<int> sugar_;
  std::vector<Pair> pairs_;
};

}  // namespace detail

/// S-polynomial whose leading terms cancel under `order`; zero when p == q.
template <class Field>
Polynomial<Field> s_polynomial(const Polynomial<Field>& p, const Polynomial<Field>& q, const MonomialOrder& order) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("S-polynomial of a zero polynomial");
  if (!same_ring(p.ring_ptr(), q.ring_ptr())) throw RingMismatch();
  auto working = detail::permuted_ring(p.ring_ptr(), order);
  auto s = detail::s_polynomial(detail::to_working(p, working, order), detail::to_working(q, working, order));
  return detail::from_working(s, p.ring_ptr(), order);
}

/// Remainder of p on division by `divisors` under `order`; p - result lies
/// in the ideal they generate.
template <class Field>
Polynomial<Field> normal_form(const Polynomial<Field>& p, std::span<const Polynomial<Field>> divisors,
                              const MonomialOrder& order) {
  auto working = detail::permuted_ring(p.ring_ptr(), order);
  std::vector<Polynomial<Field>> wdiv;
  for (const auto& g : divisors) {
    if (g.is_zero()) throw std::invalid_argument("zero divisor in normal form");
    if (!same_ring(g.ring_ptr(), p.ring_ptr())) throw RingMismatch();
    wdiv.push_back(detail::to_working(g, working, order));
  }
  std::vector<const Polynomial<Field>*> ptrs;
  for (const auto& g : wdiv) ptrs.push_back(&g);
  auto [r, scale] = detail::reduce(detail::to_working(p, working, order), std::span<const Polynomial<Field>* const>(ptrs));
  return detail::from_working(r.scaled(scale.inverse()), p.ring_ptr(), order);
}

template <class Field>
Polynomial<Field> normal_form(const Polynomial<Field>& p, const GroebnerBasis<Field>& basis) {
  return normal_form(p, basis.elements(), basis.order());
}

template <class Field>
GroebnerBasis<Field> buchberger(const Ideal<Field>& ideal, const MonomialOrder& order,
                                BuchbergerOptions options = {}, BuchbergerStats* stats = nullptr) {
  const auto& ring = ideal.ring_ptr();
  auto working = detail::permuted_ring(ring, order);
  std::vector<Polynomial<Field>> inputs;
  for (const auto& g : ideal.generators()) inputs.push_back(detail::to_working(g, working, order).canonical());
  detail::BuchbergerKernel<Field> kernel(options, stats);
  auto basis = kernel.run(inputs);
  std::vector<Polynomial<Field>> elements;
  std::vector<Monomial> leading;
  for (const auto& b : basis) {
    elements.push_back(detail::from_working(b, ring, order));
    leading.push_back(leading_monomial(elements.back(), order));
  }
  return GroebnerBasis<Field>(ring, order, std::move(elements), std::move(leading));
}

/// Basis elements lying in the subring on `keep`, which must be exactly the
/// least significant block of the basis order.
template <class Field>
std::vector<Polynomial<Field>> elimination_ideal(const GroebnerBasis<Field>& basis, std::span<const std::size_t> keep) {
  auto perm = basis.order().permutation();
  if (keep.size() > perm.size()) throw std::invalid_argument("elimination block larger than the ring");
  std::uint32_t keep_mask = 0;
  for (std::size_t v : keep) keep_mask |= (1U << v);
  std::uint32_t tail_mask = 0;
  for (std::size_t k = perm.size() - keep.size(); k < perm.size(); ++k) tail_mask |= (1U << perm[k]);
  if (keep_mask != tail_mask || static_cast<std::size_t>(std::popcount(keep_mask)) != keep.size() ||
      !basis.order().eliminates_all_but_last(keep.size())) {
    throw std::invalid_argument("elimination block is not the lex tail of the basis order");
  }
  std::vector<Polynomial<Field>> out;
  for (const auto& b : basis.elements()) {
    if ((b.support() & ~keep_mask) == 0) out.push_back(b);
  }
  return out;
}

/// Krull dimension of V(basis): the largest variable set containing the
/// support of no leading monomial; -1 for the unit ideal.
template <class Field>
int ideal_dimension(const GroebnerBasis<Field>& basis) {
  std::size_t n = basis.ring_ptr()->size();
  std::vector<std::uint32_t> supports;
  for (const auto& m : basis.leading_monomials()) supports.push_back(m.support());
  int best = -1;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [mask](std::uint32_t s) { return (s & ~mask) == 0; });
    if (independent) best = size;
  }
  return best;
}

/// I + <t*h - 1> in the ring with a fresh variable t prepended (index 0).
template <class Field>
Ideal<Field> with_rabinowitsch(const Ideal<Field>& ideal, const Polynomial<Field>& h) {
  if (h.is_zero()) throw std::invalid_argument("Rabinowitsch localization at the zero polynomial");
  if (!same_ring(h.ring_ptr(), ideal.ring_ptr())) throw RingMismatch();
  auto ring = extend_ring(ideal.ring(), 0, ideal.ring().fresh_name("t"));
  std::vector<Polynomial<Field>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(embed(g, ring));
  auto t = Polynomial<Field>::variable(ring, 0);
  gens.push_back(t * embed(h, ring) - Polynomial<Field>::one(ring));
  return Ideal<Field>(ring, std::move(gens));
}

}  // namespace nkinf
