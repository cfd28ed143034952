#include <doctest.h>

#include <random>

#include "nkinf/nonproper.hpp"
#include "support.hpp"

using namespace nkinf;
using nkinf::test::poly;
using nkinf::test::univar;

namespace {

QIdeal curve(const QRingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<QPolynomial> g;
  for (const auto* s : gens) g.push_back(poly(r, s));
  return QIdeal(r, std::move(g));
}

bool is_canonical_squarefree(const UnivariatePolynomial& rho) {
  return rho == rho.canonical() && squarefree_part(rho) == rho;
}

}  // namespace

TEST_CASE("graph_ideal appends f - z") {
  auto r = test::ring("x,y");
  auto g = graph_ideal(curve(r, {"x*y - 1"}), poly(r, "x"));
  CHECK(g.ideal.ring().names() == std::vector<std::string>{"x", "y", "z"});
  CHECK(g.z_index == 2);
  REQUIRE(g.ideal.generators().size() == 2);
  CHECK(g.ideal.generators()[0] == poly(g.ideal.ring_ptr(), "x*y - 1"));
  CHECK(g.ideal.generators()[1] == poly(g.ideal.ring_ptr(), "x - z"));

  auto rx = test::ring("x");
  auto h = graph_ideal(QIdeal(rx), poly(rx, "x"));
  REQUIRE(h.ideal.generators().size() == 1);
  CHECK(h.ideal.generators()[0] == poly(h.ideal.ring_ptr(), "x - z"));

  // A variable already called z does not collide with the fresh one.
  auto rz = test::ring("x,z");
  auto k = graph_ideal(curve(rz, {"z"}), poly(rz, "x"));
  CHECK(k.ideal.ring().name(k.z_index) != "z");
}

TEST_CASE("fiber_relation examples") {
  auto r = test::ring("x,y");
  auto hyperbola = graph_ideal(curve(r, {"x*y - 1"}), poly(r, "x"));
  auto gr = hyperbola.ideal.ring_ptr();
  CHECK(fiber_relation(hyperbola, 1).canonical() == poly(gr, "y*z - 1"));

  auto axis = graph_ideal(curve(r, {"y"}), poly(r, "x"));
  auto ar = axis.ideal.ring_ptr();
  CHECK(fiber_relation(axis, 1).canonical() == poly(ar, "y"));
  CHECK(fiber_relation(axis, 0).canonical() == poly(ar, "x - z"));

  auto plane = graph_ideal(QIdeal(r), poly(r, "x"));
  CHECK_THROWS_AS(fiber_relation(plane, 1), NotACurve);
  CHECK_THROWS_AS(fiber_relation(axis, 2), std::out_of_range);
}

TEST_CASE("leading_coeff_in examples") {
  auto r = test::ring("x,y,z");
  bool vertical = false;
  CHECK(leading_coeff_in(poly(r, "y*z - 1"), 1, 2, &vertical) == univar({0, 1}));
  CHECK_FALSE(vertical);
  CHECK(leading_coeff_in(poly(r, "x - z"), 0, 2, &vertical) == univar({1}));
  CHECK_FALSE(vertical);
  CHECK(leading_coeff_in(poly(r, "z - 1"), 0, 2, &vertical) == univar({-1, 1}));
  CHECK(vertical);
  CHECK_THROWS(leading_coeff_in(QPolynomial(r), 0, 2));
}

TEST_CASE("nonproperness_values examples") {
  auto r = test::ring("x,y");
  auto a = nonproperness_values(curve(r, {"x*y - 1"}), poly(r, "x"));
  CHECK(a.rho == univar({0, 1}));
  CHECK(a.rational_roots == std::vector<Rational>{Rational(0L)});
  CHECK_FALSE(a.vertical_component);

  auto b = nonproperness_values(curve(r, {"y"}), poly(r, "x"));
  CHECK(b.empty());
  CHECK(b.rho == univar({1}));

  auto c = nonproperness_values(curve(r, {"x*y - 1"}), poly(r, "x*y"));
  CHECK(c.rho == univar({-1, 1}));
  CHECK(c.vertical_component);
  CHECK(c.flags() == std::vector<std::string>{"vertical_component"});

  auto d = nonproperness_values(curve(r, {"1"}), poly(r, "x"));
  CHECK(d.empty_curve);
  CHECK(d.empty());

  CHECK_THROWS_AS(nonproperness_values(QIdeal(r), poly(r, "x")), NotACurve);
}

TEST_CASE("parametrized curves: values are the limits along branches to infinity") {
  auto r = test::ring("x,y");
  // Parabola y = x^2, t -> (t, t^2): f = y - x^2 + x/(...) style maps.
  // f = x*y on the parabola is t^3, proper.
  CHECK(nonproperness_values(curve(r, {"y - x^2"}), poly(r, "x*y")).empty());
  // Hyperbola (t, 1/t): f = x + y = t + 1/t tends to infinity on both branches.
  CHECK(nonproperness_values(curve(r, {"x*y - 1"}), poly(r, "x + y")).empty());
  // Hyperbola: f = y = 1/t -> 0 as t -> infinity; f = x*y^2 = 1/t -> 0 as well.
  CHECK(nonproperness_values(curve(r, {"x*y - 1"}), poly(r, "y")).rho == univar({0, 1}));
  CHECK(nonproperness_values(curve(r, {"x*y - 1"}), poly(r, "x*y^2")).rho == univar({0, 1}));
  // Hyperbola x*y = 1, f = y + 2: the branch t -> infinity gives 2.
  CHECK(nonproperness_values(curve(r, {"x*y - 1"}), poly(r, "y + 2")).rho == univar({-2, 1}));
  // Line x = 2y + 1 with f = x - 2*y: constant 1 on the line, vertical.
  auto v = nonproperness_values(curve(r, {"x - 2*y - 1"}), poly(r, "x - 2*y"));
  CHECK(v.rho == univar({-1, 1}));
  CHECK(v.vertical_component);
  // Hyperbola x*y = 1 in three variables, cut by z = 3: f = y + z -> 3.
  auto r3 = test::ring("x,y,z");
  CHECK(nonproperness_values(curve(r3, {"x*y - 1", "z - 3"}), poly(r3, "y + z")).rho == univar({-3, 1}));
}

TEST_CASE("shift covariance and canonical squarefree rho") {
  auto r = test::ring("x,y");
  std::vector<std::pair<const char*, const char*>> fixtures{
      {"x*y - 1", "y"}, {"x*y^2 - 1", "y + x*y"}, {"x^2*y - x - 1", "y"}, {"y^2 - x^3 - x", "x*y"}};
  for (const auto& [c, f] : fixtures) {
    auto base = nonproperness_values(curve(r, {c}), poly(r, f));
    REQUIRE(is_canonical_squarefree(base.rho));
    for (long shift : {-3L, 5L}) {
      auto moved = nonproperness_values(curve(r, {c}), poly(r, f) + QPolynomial::constant(r, Rational(shift)));
      REQUIRE(moved.rho == base.rho.shifted(Rational(shift)).canonical());
    }
  }
}

TEST_CASE("modular and exact plane eliminations agree") {
  std::mt19937_64 rng(41);
  auto r = test::ring("x,y,z");
  int compared = 0;
  for (int trial = 0; trial < 30 && compared < 12; ++trial) {
    QIdeal c(r, {test::random_poly(r, rng, 2, 3, 4), test::random_poly(r, rng, 2, 3, 4)});
    auto f = test::random_poly(r, rng, 2, 3, 4);
    auto g = graph_ideal(c, f);
    auto cert = buchberger(g.ideal, MonomialOrder::grevlex(4));
    if (cert.is_unit() || ideal_dimension(cert) != 1) continue;
    for (std::size_t v = 0; v < 3; ++v) {
      auto exact = eliminate_to_plane_exact(g, v);
      auto plain = eliminate_to_plane(g, v);
      auto certified = eliminate_to_plane(g, v, {.certificate = &cert});
      REQUIRE(exact.basis == plain.basis);
      REQUIRE(exact.basis == certified.basis);
      REQUIRE(exact.dimension == certified.dimension);
    }
    ++compared;
  }
  CHECK(compared >= 5);
}

TEST_CASE("modular, exact, serial and parallel value sets agree") {
  auto r = test::ring("x,y,z");
  auto c = curve(r, {"x*y - 1", "x*z + y - 2"});
  auto f = poly(r, "x + y*z");
  NonpropernessOptions base;
  auto reference = nonproperness_values(c, f, base);
  for (bool modular : {true, false}) {
    for (auto exec : {Execution::serial, Execution::parallel}) {
      NonpropernessOptions o;
      o.modular = modular;
      o.execution = exec;
      auto got = nonproperness_values(c, f, o);
      CHECK(got.rho == reference.rho);
      CHECK(got.vertical_component == reference.vertical_component);
    }
  }
}

TEST_CASE("value sets are finite or flagged empty on random curves") {
  std::mt19937_64 rng(42);
  auto r = test::ring("x,y");
  for (int trial = 0; trial < 40; ++trial) {
    auto c = test::random_poly(r, rng, 3, 4, 5);
    auto f = test::random_poly(r, rng, 3, 3, 5);
    if (c.total_degree() < 1 || f.total_degree() < 1) continue;
    auto vs = nonproperness_values(QIdeal(r, {c}), f);
    REQUIRE((!vs.rho.is_zero() || vs.empty_curve));
    REQUIRE(is_canonical_squarefree(vs.rho));
    for (const auto& q : vs.rational_roots) REQUIRE(vs.rho.evaluate(q).is_zero());
    REQUIRE(vs.approx_roots.size() == static_cast<std::size_t>(std::max(vs.rho.degree(), 0)));
  }
}
