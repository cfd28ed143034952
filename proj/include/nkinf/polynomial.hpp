#pragma once

// Sparse multivariate polynomials over an exact field. Terms are kept sorted
// by descending lex order on the ring's variable sequence (index 0 most
// significant), so the front term is the leading term under the default
// order. Other lex orders are handled by the Groebner layer through variable
// permutation.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nkinf/field.hpp"

namespace nkinf {

inline constexpr std::size_t kMaxVariables = 16;

/// Total degree of the zero polynomial.
inline constexpr int kZeroPolynomialDegree = std::numeric_limits<int>::min();

class RingMismatch : public std::invalid_argument {
 public:
  RingMismatch() : std::invalid_argument("polynomials belong to different rings") {}
};

class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::span<const unsigned> exponents) {
    if (exponents.size() > kMaxVariables) throw std::length_error("too many variables");
    for (std::size_t i = 0; i < exponents.size(); ++i) e_[i] = checked(exponents[i]);
  }

  static Monomial variable(std::size_t index, unsigned power = 1) {
    Monomial m;
    m.e_.at(index) = checked(power);
    return m;
  }

  unsigned operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, unsigned value) { e_.at(i) = checked(value); }

  int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  bool is_one() const { return *this == Monomial{}; }

  /// Bit i set iff variable i occurs.
  std::uint32_t support() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (e_[i] != 0) mask |= (1U << i);
    }
    return mask;
  }

  bool divides(const Monomial& other) const {
    bool exceeds = false;
    for (std::size_t i = 0; i < kMaxVariables; ++i) exceeds |= e_[i] > other.e_[i];
    return !exceeds;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (e_[i] != 0 && other.e_[i] != 0) return false;
    }
    return true;
  }

  Monomial lcm(const Monomial& other) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = std::max(e_[i], other.e_[i]);
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    bool wrapped = false;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      m.e_[i] = static_cast<Exponent>(a.e_[i] + b.e_[i]);
      wrapped |= m.e_[i] < a.e_[i];
    }
    if (wrapped) throw std::overflow_error("exponent overflow");
    return m;
  }

  /// Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = static_cast<Exponent>(a.e_[i] - b.e_[i]);
    return m;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  static Exponent checked(unsigned v) {
    if (v > std::numeric_limits<Exponent>::max()) throw std::overflow_error("exponent overflow");
    return static_cast<Exponent>(v);
  }

  std::array<Exponent, kMaxVariables> e_{};
};

/// Term order on a ring's own variable layout: consecutive blocks compared
/// in turn, each by graded reverse lex; variables outside every block are
/// compared lexicographically. The default is plain lex.
class TermOrder {
 public:
  struct Block {
    std::size_t begin;
    std::size_t end;
    friend bool operator==(const Block&, const Block&) = default;
  };

  TermOrder() = default;
  /// Graded blocks of the given sizes, covering the variables in order.
  static TermOrder graded_blocks(std::span<const std::size_t> sizes) {
    TermOrder t;
    std::size_t begin = 0;
    for (std::size_t size : sizes) {
      if (size == 0) throw std::invalid_argument("empty block in term order");
      t.blocks_.push_back({begin, begin + size});
      begin += size;
    }
    if (begin > kMaxVariables) throw std::length_error("too many variables");
    return t;
  }

  bool is_lex() const { return blocks_.empty(); }
  std::span<const Block> blocks() const { return blocks_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (blocks_.empty()) return a <=> b;
    std::size_t v = 0;
    for (const auto& blk : blocks_) {
      for (; v < blk.begin; ++v) {
        if (a[v] != b[v]) return a[v] <=> b[v];
      }
      unsigned da = 0;
      unsigned db = 0;
      for (std::size_t k = blk.begin; k < blk.end; ++k) {
        da += a[k];
        db += b[k];
      }
      if (da != db) return da <=> db;
      for (std::size_t k = blk.end; k-- > blk.begin;) {
        if (a[k] != b[k]) return b[k] <=> a[k];
      }
      v = blk.end;
    }
    for (; v < kMaxVariables; ++v) {
      if (a[v] != b[v]) return a[v] <=> b[v];
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  /// Packed image of a monomial whose word-wise comparison agrees with
  /// compare(): 16-bit lanes, most significant lane first.
  using Key = std::array<std::uint64_t, 4>;
  static constexpr std::size_t kKeyLanes = 16;

  /// Lanes used for an `nvars`-variable ring; keys need at most kKeyLanes.
  std::size_t key_lanes(std::size_t nvars) const { return nvars + blocks_.size(); }

  Key key(const Monomial& m, std::size_t nvars) const {
    Key k{};
    std::size_t lane = 0;
    auto put = [&](std::uint64_t value) {
      k[lane / 4] |= value << (16 * (3 - lane % 4));
      ++lane;
    };
    std::size_t v = 0;
    for (const auto& blk : blocks_) {
      for (; v < blk.begin; ++v) put(m[v]);
      unsigned degree = 0;
      for (std::size_t i = blk.begin; i < blk.end; ++i) degree += m[i];
      if (degree > 0xFFFF) throw std::overflow_error("block degree overflow");
      put(degree);
      for (std::size_t i = blk.end; i-- > blk.begin;) put(0xFFFF - m[i]);
      v = blk.end;
    }
    for (; v < nvars; ++v) put(m[v]);
    return k;
  }

  friend bool operator==(const TermOrder&, const TermOrder&) = default;

 private:
  std::vector<Block> blocks_;
};

/// Monomial order given by a significance permutation (permutation[0] is the
/// most significant variable) and an optional split of that sequence into
/// graded reverse-lex blocks. Without blocks it is lex.
class MonomialOrder {
 public:
  static MonomialOrder lex(std::size_t nvars) {
    std::vector<std::size_t> perm(nvars);
    std::iota(perm.begin(), perm.end(), 0);
    return MonomialOrder(std::move(perm), {});
  }

  static MonomialOrder lex(std::vector<std::size_t> permutation) { return MonomialOrder(std::move(permutation), {}); }

  /// Lex order whose least significant block is `tail` (in the given order);
  /// the remaining variables precede it in their natural order.
  static MonomialOrder elimination(std::size_t nvars, std::span<const std::size_t> tail) {
    return MonomialOrder(tail_last(nvars, tail), {});
  }

  /// Graded reverse lex over all variables.
  static MonomialOrder grevlex(std::size_t nvars) {
    std::vector<std::size_t> perm(nvars);
    std::iota(perm.begin(), perm.end(), 0);
    return MonomialOrder(std::move(perm), {nvars});
  }

  /// Product of two graded reverse-lex blocks, `tail` being the less
  /// significant one. Eliminates everything outside `tail`, and is usually far
  /// cheaper than lex.
  static MonomialOrder block_elimination(std::size_t nvars, std::span<const std::size_t> tail) {
    if (tail.empty() || tail.size() > nvars) throw std::invalid_argument("bad elimination block");
    std::vector<std::size_t> sizes;
    if (tail.size() < nvars) sizes.push_back(nvars - tail.size());
    sizes.push_back(tail.size());
    return MonomialOrder(tail_last(nvars, tail), std::move(sizes));
  }

  std::span<const std::size_t> permutation() const { return perm_; }
  std::size_t size() const { return perm_.size(); }
  /// The order on the permuted layout (variable k is permutation()[k]).
  const TermOrder& working_order() const { return working_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      if (perm_[i] != i) return false;
    }
    return true;
  }

  /// Whether the last `count` variables of the permutation form a union of
  /// whole blocks, i.e. whether the order eliminates the others.
  bool eliminates_all_but_last(std::size_t count) const {
    if (count > perm_.size()) return false;
    std::size_t cut = perm_.size() - count;
    return std::none_of(working_.blocks().begin(), working_.blocks().end(),
                        [cut](const TermOrder::Block& b) { return b.begin < cut && cut < b.end; });
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (working_.is_lex()) {
      for (std::size_t v : perm_) {
        if (a[v] != b[v]) return a[v] <=> b[v];
      }
      return std::strong_ordering::equal;
    }
    Monomial pa;
    Monomial pb;
    for (std::size_t k = 0; k < perm_.size(); ++k) {
      pa.set(k, a[perm_[k]]);
      pb.set(k, b[perm_[k]]);
    }
    return working_.compare(pa, pb);
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(std::vector<std::size_t> perm, std::vector<std::size_t> block_sizes) : perm_(std::move(perm)) {
    if (perm_.size() > kMaxVariables) throw std::length_error("too many variables");
    std::vector<bool> seen(perm_.size(), false);
    for (std::size_t v : perm_) {
      if (v >= perm_.size() || seen[v]) throw std::invalid_argument("order permutation is not a bijection");
      seen[v] = true;
    }
    if (!block_sizes.empty()) {
      if (std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0}) != perm_.size()) {
        throw std::invalid_argument("order blocks do not cover the variables");
      }
      working_ = TermOrder::graded_blocks(block_sizes);
    }
  }

  static std::vector<std::size_t> tail_last(std::size_t nvars, std::span<const std::size_t> tail) {
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (std::find(tail.begin(), tail.end(), i) == tail.end()) perm.push_back(i);
    }
    perm.insert(perm.end(), tail.begin(), tail.end());
    return perm;
  }

  std::vector<std::size_t> perm_;
  TermOrder working_;
};

template <class Field>
class Ring {
 public:
  explicit Ring(std::vector<std::string> names, Field field = Field{}, TermOrder order = {})
      : names_(std::move(names)), field_(std::move(field)), order_(std::move(order)) {
    if (names_.size() > kMaxVariables) throw std::length_error("too many variables");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable name " + names_[i]);
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const Field& field() const { return field_; }
  /// Order in which polynomials of this ring keep their terms.
  const TermOrder& term_order() const { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return i;
    }
    return std::nullopt;
  }

  /// `base` if unused in this ring, otherwise base followed by underscores.
  std::string fresh_name(std::string base) const {
    while (index_of(base)) base += '_';
    return base;
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ && a.field_ == b.field_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> names_;
  Field field_;
  TermOrder order_;
};

template <class Field>
using RingPtr = std::shared_ptr<const Ring<Field>>;

template <class Field>
RingPtr<Field> make_ring(std::vector<std::string> names, Field field = Field{}, TermOrder order = {}) {
  return std::make_shared<const Ring<Field>>(std::move(names), std::move(field), std::move(order));
}

template <class Field>
bool same_ring(const RingPtr<Field>& a, const RingPtr<Field>& b) {
  return a == b || *a == *b;
}

template <class Field>
class Polynomial {
 public:
  using Element = typename Field::Element;
  struct Term {
    Monomial monomial;
    Element coeff;
  };

  explicit Polynomial(RingPtr<Field> ring) : ring_(std::move(ring)) {}

  /// Arbitrary term list: sorted, like terms merged, zeros dropped.
  Polynomial(RingPtr<Field> ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    const auto& order = ring_->term_order();
    std::sort(terms_.begin(), terms_.end(),
              [&order](const Term& a, const Term& b) { return order.greater(a.monomial, b.monomial); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().monomial == t.monomial) {
        merged.back().coeff += t.coeff;
      } else {
        if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
    terms_ = std::move(merged);
  }

  /// Terms already strictly descending with nonzero coefficients.
  static Polynomial from_sorted(RingPtr<Field> ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  static Polynomial constant(RingPtr<Field> ring, Element c) {
    Polynomial p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({Monomial{}, std::move(c)});
    return p;
  }

  static Polynomial one(RingPtr<Field> ring) {
    auto c = ring->field().one();
    return constant(std::move(ring), std::move(c));
  }

  static Polynomial variable(RingPtr<Field> ring, std::size_t index) {
    if (index >= ring->size()) throw std::out_of_range("variable index out of range");
    auto c = ring->field().one();
    return from_sorted(std::move(ring), {Term{Monomial::variable(index), std::move(c)}});
  }

  const Ring<Field>& ring() const { return *ring_; }
  const RingPtr<Field>& ring_ptr() const { return ring_; }
  const Field& field() const { return ring_->field(); }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }

  Element coefficient(const Monomial& m) const {
    const auto& order = ring_->term_order();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [&order](const Term& t, const Monomial& key) {
      return order.greater(t.monomial, key);
    });
    if (it != terms_.end() && it->monomial == m) return it->coeff;
    return field().zero();
  }

  int total_degree() const {
    int d = kZeroPolynomialDegree;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  /// Highest power of `var`; -1 for the zero polynomial.
  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial[var]));
    return d;
  }

  std::uint32_t support() const {
    std::uint32_t mask = 0;
    for (const auto& t : terms_) mask |= t.monomial.support();
    return mask;
  }

  Polynomial scaled(const Element& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.monomial, t.coeff * c});
    return from_sorted(ring_, std::move(out));
  }

  /// Multiplied by a monomial and a scalar.
  Polynomial shifted(const Monomial& m, const Element& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.monomial * m, t.coeff * c});
    return from_sorted(ring_, std::move(out));
  }

  /// Canonical associate: primitive integer with positive leading
  /// coefficient over Q, monic over F_p.
  Polynomial canonical() const {
    if (terms_.empty()) return *this;
    std::vector<Element> coeffs;
    coeffs.reserve(terms_.size());
    for (const auto& t : terms_) coeffs.push_back(t.coeff);
    Element s = field().canonical_scale(coeffs);
    if (s.is_one()) return *this;
    return scaled(s);
  }

  Polynomial operator-() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.monomial, -t.coeff});
    return from_sorted(ring_, std::move(out));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) { return combine(p, q, false); }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return combine(p, q, true); }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    check_ring(p, q);
    if (p.is_zero() || q.is_zero()) return Polynomial(p.ring_);
    std::vector<Term> products;
    products.reserve(p.size() * q.size());
    for (const auto& a : p.terms_) {
      for (const auto& b : q.terms_) products.push_back({a.monomial * b.monomial, a.coeff * b.coeff});
    }
    return Polynomial(p.ring_, std::move(products));
  }

  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    if (!same_ring(p.ring_, q.ring_) || p.size() != q.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.terms_[i].monomial != q.terms_[i].monomial || !(p.terms_[i].coeff == q.terms_[i].coeff)) return false;
    }
    return true;
  }

  /// Evaluation at a point (one value per ring variable).
  Element evaluate(std::span<const Element> point) const {
    if (point.size() != ring_->size()) throw std::invalid_argument("evaluation point has wrong arity");
    Element sum = field().zero();
    for (const auto& t : terms_) {
      Element v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i) {
        for (unsigned e = 0; e < t.monomial[i]; ++e) v *= point[i];
      }
      sum += v;
    }
    return sum;
  }

  /// Text form accepted by the CLI parser, e.g. "x^2*y - 1/2*x + 3".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
      std::string c = t.coeff.str();
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (first) {
        if (negative) out << '-';
      } else {
        out << (negative ? " - " : " + ");
      }
      first = false;
      bool unit = c == "1";
      bool wrote = false;
      if (!unit || t.monomial.is_one()) {
        out << c;
        wrote = true;
      }
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        unsigned e = t.monomial[i];
        if (e == 0) continue;
        if (wrote) out << '*';
        out << ring_->name(i);
        if (e > 1) out << '^' << e;
        wrote = true;
      }
    }
    return out.str();
  }

 private:
  static void check_ring(const Polynomial& p, const Polynomial& q) {
    if (!same_ring(p.ring_, q.ring_)) throw RingMismatch();
  }

  static Polynomial combine(const Polynomial& p, const Polynomial& q, bool subtract) {
    check_ring(p, q);
    std::vector<Term> out;
    out.reserve(p.size() + q.size());
    const auto& order = p.ring_->term_order();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < p.size() || j < q.size()) {
      std::strong_ordering c = std::strong_ordering::equal;
      if (i < p.size() && j < q.size()) c = order.compare(p.terms_[i].monomial, q.terms_[j].monomial);
      if (j == q.size() || (i < p.size() && c > 0)) {
        out.push_back(p.terms_[i++]);
      } else if (i == p.size() || c < 0) {
        out.push_back({q.terms_[j].monomial, subtract ? -q.terms_[j].coeff : q.terms_[j].coeff});
        ++j;
      } else {
        Element c = subtract ? p.terms_[i].coeff - q.terms_[j].coeff : p.terms_[i].coeff + q.terms_[j].coeff;
        if (!c.is_zero()) out.push_back({p.terms_[i].monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return from_sorted(p.ring_, std::move(out));
  }

  RingPtr<Field> ring_;
  std::vector<Term> terms_;
};

using QPolynomial = Polynomial<RationalField>;
using QRingPtr = RingPtr<RationalField>;

template <class Element>
using Matrix = std::vector<std::vector<Element>>;

template <class Field>
Polynomial<Field> partial_derivative(const Polynomial<Field>& p, std::size_t var) {
  if (var >= p.ring().size()) throw std::out_of_range("variable index out of range");
  std::vector<typename Polynomial<Field>::Term> out;
  for (const auto& t : p.terms()) {
    unsigned e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    auto c = t.coeff * p.field().from_int(e);
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  }
  // Dividing every surviving term by x_var preserves their relative order.
  return Polynomial<Field>::from_sorted(p.ring_ptr(), std::move(out));
}

/// Determinant by Gaussian elimination over the field.
template <class Element>
Element determinant(Matrix<Element> m, const Element& one) {
  std::size_t n = m.size();
  Element det = one;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col].size() != n) throw std::invalid_argument("matrix is not square");
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return one - one;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Element factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan; throws std::domain_error when singular.
template <class Element>
Matrix<Element> inverse(Matrix<Element> m, const Element& one) {
  std::size_t n = m.size();
  Element zero = one - one;
  Matrix<Element> inv(n, std::vector<Element>(n, zero));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = one;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Element scale = one / m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Element factor = m[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= factor * m[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

/// p(M x): every variable x_j is replaced by sum_k M[j][k] x_k.
template <class Field>
Polynomial<Field> substitute_linear(const Polynomial<Field>& p, const Matrix<typename Field::Element>& matrix) {
  const auto& ring = p.ring_ptr();
  std::size_t n = ring->size();
  if (matrix.size() != n) throw std::invalid_argument("substitution matrix has wrong size");
  for (const auto& row : matrix) {
    if (row.size() != n) throw std::invalid_argument("substitution matrix is not square");
  }
  if (determinant(matrix, p.field().one()).is_zero()) throw std::domain_error("singular substitution matrix");

  std::vector<Polynomial<Field>> forms;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<typename Polynomial<Field>::Term> terms;
    for (std::size_t k = 0; k < n; ++k) terms.push_back({Monomial::variable(k), matrix[j][k]});
    forms.emplace_back(ring, std::move(terms));
  }
  // powers[j][e] = forms[j]^e, grown on demand
  std::vector<std::vector<Polynomial<Field>>> powers(n);
  for (std::size_t j = 0; j < n; ++j) powers[j].push_back(Polynomial<Field>::one(ring));
  auto power = [&](std::size_t j, unsigned e) -> const Polynomial<Field>& {
    while (powers[j].size() <= e) powers[j].push_back(powers[j].back() * forms[j]);
    return powers[j][e];
  };

  Polynomial<Field> result(ring);
  for (const auto& t : p.terms()) {
    Polynomial<Field> term = Polynomial<Field>::constant(ring, t.coeff);
    for (std::size_t j = 0; j < n; ++j) {
      if (t.monomial[j] != 0) term *= power(j, t.monomial[j]);
    }
    result += term;
  }
  return result;
}

/// Re-expresses p in `target`, sending variable i of p's ring to index_map[i].
template <class Field>
Polynomial<Field> map_variables(const Polynomial<Field>& p, RingPtr<Field> target,
                                std::span<const std::size_t> index_map) {
  if (index_map.size() != p.ring().size()) throw std::invalid_argument("variable map has wrong arity");
  std::vector<typename Polynomial<Field>::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < index_map.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (index_map[i] >= target->size()) throw std::out_of_range("variable map target out of range");
      m.set(index_map[i], t.monomial[i]);
    }
    terms.push_back({m, t.coeff});
  }
  return Polynomial<Field>(std::move(target), std::move(terms));
}

/// Embeds p into a ring that has p's variables under the same names.
template <class Field>
Polynomial<Field> embed(const Polynomial<Field>& p, const RingPtr<Field>& target) {
  std::vector<std::size_t> map;
  for (const auto& name : p.ring().names()) {
    auto idx = target->index_of(name);
    if (!idx) throw std::invalid_argument("variable " + name + " missing from target ring");
    map.push_back(*idx);
  }
  return map_variables(p, target, map);
}

/// Ring with one extra variable named `name` inserted at `position`.
template <class Field>
RingPtr<Field> extend_ring(const Ring<Field>& ring, std::size_t position, const std::string& name) {
  auto names = ring.names();
  names.insert(names.begin() + static_cast<std::ptrdiff_t>(position), name);
  return make_ring(std::move(names), ring.field());
}

/// Sets variable `var` to zero; the result lives in the ring without it.
template <class Field>
Polynomial<Field> restrict_hyperplane(const Polynomial<Field>& p, std::size_t var) {
  const auto& ring = p.ring();
  if (var >= ring.size()) throw std::out_of_range("variable index out of range");
  auto names = ring.names();
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(var));
  auto target = make_ring(std::move(names), ring.field());
  std::vector<typename Polynomial<Field>::Term> terms;
  for (const auto& t : p.terms()) {
    if (t.monomial[var] != 0) continue;
    Monomial m;
    for (std::size_t i = 0, j = 0; i < ring.size(); ++i) {
      if (i == var) continue;
      m.set(j++, t.monomial[i]);
    }
    terms.push_back({m, t.coeff});
  }
  return Polynomial<Field>(std::move(target), std::move(terms));
}

struct PrimitiveDecomposition {
  Rational content;
  QPolynomial primitive;
};

/// p = content * primitive, primitive integral with gcd 1 and positive
/// leading coefficient.
inline PrimitiveDecomposition make_primitive(const QPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("make_primitive of the zero polynomial");
  QPolynomial prim = p.canonical();
  Rational content = p.leading_term().coeff / prim.leading_term().coeff;
  return {content, prim};
}

/// Image of a rational polynomial in F_p[same variables].
inline Polynomial<PrimeField> reduce_mod(const QPolynomial& p, const RingPtr<PrimeField>& target) {
  std::vector<Polynomial<PrimeField>::Term> terms;
  for (const auto& t : p.terms()) terms.push_back({t.monomial, target->field().from_rational(t.coeff)});
  return Polynomial<PrimeField>(target, std::move(terms));
}

}  // namespace nkinf
