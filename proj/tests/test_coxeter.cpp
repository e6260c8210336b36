#include "hyperrefl/coxeter.hpp"
#include "groups.hpp"
#include "oracles/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hyperrefl;
using namespace hyperrefl::coxeter;
using testgroups::tri23inf;
using testgroups::tri344;
using testgroups::universal;

namespace {
int count_kind(const ReflectionGroup& g, PolytopeVertex::Kind k) {
  int n = 0;
  for (const auto& v : g.vertices()) n += v.kind == k;
  return n;
}

Element power(const ReflectionGroup& g, const Word& w, int k) {
  Word out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return word_element(g, out);
}
}  // namespace

TEST_SUITE("coxeter") {
  TEST_CASE("example groups") {
    CHECK(count_kind(tri23inf(), PolytopeVertex::Kind::Ideal) == 1);
    CHECK(count_kind(tri344(), PolytopeVertex::Kind::Finite) == 3);
    CHECK(tri344().is_polytope());
    CHECK(tri23inf().is_polytope());
    CHECK(count_kind(universal(), PolytopeVertex::Kind::Hyperideal) == 3);
    CHECK_FALSE(universal().is_polytope());
    for (const ReflectionGroup* g : {&tri344(), &tri23inf(), &universal()}) {
      const Matrix gram = g->spec().gram().entries;
      for (int i = 0; i < 3; ++i) {
        CHECK(lorentz::form(g->wall(i).normal, g->basepoint()) > 0.0);
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(lorentz::form(g->wall(i).normal, g->wall(j).normal) - gram(i, j)) < tol::form);
      }
    }
  }

  TEST_CASE("spherical and affine labels are rejected") {
    using testgroups::triangle;
    CHECK_THROWS_WITH_AS(build_group(triangle("sph", CoxeterLabel::finite(2), CoxeterLabel::finite(3),
                                                CoxeterLabel::finite(3))),
                         doctest::Contains("not hyperbolic"), GeometryError);
    CHECK_THROWS_WITH_AS(build_group(triangle("aff", CoxeterLabel::finite(3), CoxeterLabel::finite(3),
                                                CoxeterLabel::finite(3))),
                         doctest::Contains("not hyperbolic"), GeometryError);
  }

  TEST_CASE("left descents") {
    const auto& g = tri344();
    const Element e = word_element(g, {});
    for (int s = 0; s < 3; ++s) {
      CHECK(is_left_descent(g, s, word_element(g, {s})));
      CHECK_FALSE(is_left_descent(g, s, e));
    }
    const Element w = word_element(g, {0, 1});
    CHECK(is_left_descent(g, 0, w));
    CHECK_FALSE(is_left_descent(g, 1, w));
  }

  TEST_CASE("reduce examples") {
    CHECK(reduce(tri344(), {0, 0}).word.empty());
    CHECK(reduce(tri23inf(), {0, 1, 0}).word == Word{1});
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> gen(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
      Word w;
      for (int i = 0; i < 12; ++i) w.push_back(gen(rng));
      const Element once = reduce(tri344(), w);
      const Element twice = reduce(tri344(), once.word);
      CHECK(once.word == twice.word);
      CHECK((once.iso.matrix() - oracle::word_matrix(tri344(), w)).cwiseAbs().maxCoeff() < tol::form * 100);
    }
  }

  TEST_CASE("element_equal examples") {
    const auto& g = tri344();
    CHECK(element_equal(word_element(g, {0, 1, 0}), word_element(g, {1, 0, 1})));
    CHECK_FALSE(element_equal(word_element(g, {0}), word_element(g, {1})));
    const Element w = word_element(g, {2, 0, 1});
    Word wr = w.word;
    for (int i = 0; i < 3; ++i) wr.insert(wr.end(), {0, 1});
    CHECK(element_equal(w, word_element(g, wr)));
  }

  TEST_CASE("defining relations hold as matrices") {
    for (const ReflectionGroup* g : {&tri344(), &tri23inf()}) {
      for (int i = 0; i < 3; ++i) {
        CHECK(oracle::is_identity(power(*g, {i}, 2).iso.matrix()));
        for (int j = i + 1; j < 3; ++j) {
          const auto& l = g->spec().label(i, j);
          if (l.infinite()) {
            for (int k = 1; k <= 8; ++k) CHECK_FALSE(oracle::is_identity(power(*g, {i, j}, k).iso.matrix()));
            continue;
          }
          CHECK(oracle::is_identity(power(*g, {i, j}, l.m).iso.matrix()));
          for (int k = 1; k < l.m; ++k) CHECK_FALSE(oracle::is_identity(power(*g, {i, j}, k).iso.matrix()));
        }
      }
    }
  }

  TEST_CASE("enumeration counts match the growth series") {
    CHECK(enumerate_elements(tri344(), 0).size() == 1);
    CHECK(enumerate_elements(tri344(), 1).size() == 4);
    CHECK(enumerate_elements(tri344(), 2).size() == 10);
    for (int L = 0; L <= 10; ++L) {
      CHECK(enumerate_elements(tri344(), L).size() == static_cast<size_t>(testgroups::kCount344[L]));
      CHECK(enumerate_elements(tri23inf(), L).size() == static_cast<size_t>(testgroups::kCount23inf[L]));
      CHECK(enumerate_elements(universal(), L).size() == static_cast<size_t>(testgroups::kCountUniversal[L]));
    }
    CHECK_THROWS_AS(enumerate_elements(universal(), 20, 1000), ResourceError);
  }

  TEST_CASE("word length equals Cayley graph distance up to length 8") {
    for (const ReflectionGroup* g : {&tri344(), &tri23inf()}) {
      const auto ball = oracle::cayley_ball(*g, 8);
      const auto elems = enumerate_elements(*g, 8);
      CHECK(ball.size() == elems.size());
      for (const auto& b : ball) {
        const Element e = reduce(*g, b.word);
        CHECK(e.length() == b.length);
        CHECK(canonical(*g, Isometry(b.m)).word == e.word);
      }
    }
  }

  TEST_CASE("orbit points are separated and none enters the fundamental domain") {
    const auto elems = enumerate_elements(tri344(), 7);
    double min_sep = 1e300;
    for (size_t a = 0; a < elems.size(); ++a)
      for (size_t b = a + 1; b < elems.size(); ++b)
        min_sep = std::min(min_sep, (elems[a].point() - elems[b].point()).norm());
    CHECK(min_sep > 10 * tol::point);
    for (size_t a = 1; a < elems.size(); ++a) {
      bool inside = true;
      for (int s = 0; s < 3; ++s) inside = inside && lorentz::form(tri344().wall(s).normal, elems[a].point()) > 0.0;
      CHECK_FALSE(inside);
    }
  }

  TEST_CASE("reflections") {
    const auto gens = enumerate_reflections(tri344(), 0);
    REQUIRE(gens.size() == 3);
    for (int s = 0; s < 3; ++s) CHECK(gens[static_cast<size_t>(s)].element.word == Word{s});
    const auto refl = enumerate_reflections(tri344(), 4);
    for (const auto& r : refl) {
      CHECK(oracle::is_identity(r.element.iso.matrix() * r.element.iso.matrix()));
      CHECK_FALSE(oracle::is_identity(r.element.iso.matrix()));
      CHECK(r.element.length() == 2 * r.conjugator_length + 1);
      // H_r = w H_s for w the first half of the palindromic word.
      const int c = r.conjugator_length;
      const Word w(r.element.word.begin(), r.element.word.begin() + c);
      const int s = r.element.word[static_cast<size_t>(c)];
      const Vector n = word_element(tri344(), w).iso.apply(tri344().wall(s).normal);
      CHECK(std::min((n - r.hyperplane.normal).norm(), (n + r.hyperplane.normal).norm()) < 1e-8 * n.norm());
      CHECK(lorentz::form(r.hyperplane.normal, tri344().basepoint()) > 0.0);
    }
  }

  TEST_CASE("product conjugacy witnesses") {
    const auto& g = tri344();
    const auto refl = enumerate_reflections(g, 3);
    auto check_witness = [&](const Reflection& r1, const Reflection& r2, const ConjugacyWitness& w) {
      Word pw;
      const int k = w.k < 0 ? -w.k : w.k;
      const Word base = w.k < 0 ? Word{w.j, w.i} : Word{w.i, w.j};
      for (int i = 0; i < k; ++i) pw.insert(pw.end(), base.begin(), base.end());
      const Matrix rhs = w.w.iso.matrix() * oracle::word_matrix(g, pw) * w.w.iso.inverse().matrix();
      const Matrix lhs = r1.element.iso.matrix() * r2.element.iso.matrix();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
    };
    const auto w12 = product_conjugacy_check(g, refl[0], refl[1], 2);
    REQUIRE(w12.has_value());
    check_witness(refl[0], refl[1], *w12);
    CHECK(w12->w.word.empty());

    const Reflection s1s2s1 = reflection_from_element(g, reduce(g, {0, 1, 0}), 1);
    const auto w2 = product_conjugacy_check(g, refl[0], s1s2s1, 4);
    REQUIRE(w2.has_value());
    check_witness(refl[0], s1s2s1, *w2);
    // s1 (s1 s2 s1) = s2 s1 = (s1 s2)^2 since m12 = 3.
    CHECK(((w2->k % 3) + 3) % 3 == 2);

    // Intersecting pairs always have a witness.
    for (size_t a = 0; a < refl.size(); ++a)
      for (size_t b = a + 1; b < std::min(refl.size(), a + 8); ++b) {
        if (hyperboloid::classify_pair(refl[a].hyperplane, refl[b].hyperplane).kind !=
            hyperboloid::PairKind::Intersecting)
          continue;
        const auto w = product_conjugacy_check(g, refl[a], refl[b], 8);
        CHECK(w.has_value());
        if (w) check_witness(refl[a], refl[b], *w);
      }

    const auto u = enumerate_reflections(universal(), 0);
    CHECK_FALSE(product_conjugacy_check(universal(), u[0], u[1], 8).has_value());
  }

  TEST_CASE("ultra-parallel partners") {
    const auto u = enumerate_reflections(universal(), 0);
    const auto p = find_ultraparallel_partner(universal(), u[0], 0.5, 0);
    REQUIRE(p.has_value());
    CHECK(hyperboloid::hyperplane_distance(u[0].hyperplane, p->hyperplane) == doctest::Approx(1.0));

    const auto& g = tri344();
    const auto r = enumerate_reflections(g, 0)[0];
    const auto far = find_ultraparallel_partner(g, r, 2.0, 8);
    REQUIRE(far.has_value());
    CHECK(hyperboloid::classify_pair(r.hyperplane, far->hyperplane).kind == hyperboloid::PairKind::UltraParallel);
    CHECK(hyperboloid::hyperplane_distance(r.hyperplane, far->hyperplane) > 2.0);
    CHECK(find_ultraparallel_partner(g, r, 0.0, 8).has_value());
    CHECK_FALSE(find_ultraparallel_partner(g, r, 50.0, 2).has_value());
  }

  TEST_CASE("long reflections multiply consistently") {
    const auto refl = enumerate_reflections(tri23inf(), 7);
    for (const auto& r : refl) CHECK(multiply(tri23inf(), r.element, r.element).word.empty());
    const auto elems = enumerate_elements(tri344(), 6);
    for (size_t i = 0; i < elems.size(); i += 7) {
      const Element inv = inverse(tri344(), elems[i]);
      CHECK(multiply(tri344(), elems[i], inv).word.empty());
    }
  }
}
