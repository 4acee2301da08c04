#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linfty/algebra.hpp"
#include "linfty/multilinear.hpp"
#include "testutil.hpp"

using namespace linfty;

TEST_CASE("koszul sign basics") {
  CHECK(koszul_sign({1, 2, 3}, {0, 1, 2}) == 1);
  CHECK(koszul_sign({1, 1}, {1, 0}) == -1);   // swap of two odd elements
  CHECK(koszul_sign({1, 2}, {1, 0}) == 1);    // odd past even
  CHECK(koszul_sign({2, 2}, {1, 0}) == 1);
  CHECK_THROWS_AS(koszul_sign({1}, {0, 1}), error);
}

TEST_CASE("koszul sign cocycle identity over S4") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> deg(4);
    for (auto& d : deg) d = rng.range(-2, 3);
    for (const Perm& s : all_permutations(4)) {
      for (const Perm& t : all_permutations(4)) {
        std::vector<int> deg_s(4);
        for (int i = 0; i < 4; ++i) deg_s[i] = deg[s[i]];
        CHECK(koszul_sign(deg, compose_perm(s, t)) ==
              koszul_sign(deg, s) * koszul_sign(deg_s, t));
      }
    }
  }
}

TEST_CASE("unshuffle counts and brute-force comparison") {
  CHECK(unshuffles(1, 1).size() == 2);
  CHECK(unshuffles(2, 1).size() == 3);
  CHECK(unshuffles(2, 2).size() == 6);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 8 && j <= 4; ++j)
      CHECK(Rat(static_cast<int>(unshuffles(i, j).size())) == binomial(i + j, i));
  // brute-force filter of S_3 and S_4
  for (auto [i, j] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {1, 3}}) {
    std::vector<Perm> brute;
    for (const Perm& p : all_permutations(i + j)) {
      bool ok = true;
      for (int s = 0; s + 1 < i; ++s) ok &= p[s] < p[s + 1];
      for (int s = i; s + 1 < i + j; ++s) ok &= p[s] < p[s + 1];
      if (ok) brute.push_back(p);
    }
    auto mine = unshuffles(i, j);
    std::sort(mine.begin(), mine.end());
    std::sort(brute.begin(), brute.end());
    CHECK(mine == brute);
  }
}

TEST_CASE("symmetric basis respects odd-repetition exclusion") {
  auto sp = std::make_shared<Space>("T", 9);
  SUBCASE("two even generators") {
    sp->add({"a", 0, 1});
    sp->add({"b", 2, 1});
    CHECK(symmetric_basis(*sp, 2).size() == 3);
  }
  SUBCASE("one odd generator") {
    sp->add({"v", 1, 1});
    CHECK(symmetric_basis(*sp, 2).size() == 0);
  }
  SUBCASE("one odd one even") {
    sp->add({"v", 1, 1});
    sp->add({"a", 0, 1});
    CHECK(symmetric_basis(*sp, 2).size() == 2);  // v(.)a, a(.)a
  }
}

TEST_CASE("evaluate: multilinearity, graded symmetry, dense oracle") {
  auto sp2 = std::make_shared<Space>("T2", 9);
  int x = sp2->add({"x", 1, 1});
  int y = sp2->add({"y", 1, 1});
  int z = sp2->add({"z", 3, 2});
  MultiMap m(sp2, sp2, 2, 1);
  m.set({x, y}, Element::unit(z));

  SUBCASE("zero argument gives zero") {
    Element zero;
    CHECK(m.eval(std::vector<Element>{Element::unit(x), zero}).is_zero());
  }
  SUBCASE("swapping odd arguments flips the sign") {
    Element ex = Element::unit(x), ey = Element::unit(y);
    Element ab = m.eval(std::vector<Element>{ex, ey});
    Element ba = m.eval(std::vector<Element>{ey, ex});
    CHECK(ab == -ba);
    CHECK(ab == Element::unit(z));
  }
  SUBCASE("linearity in each slot") {
    Rng rng(3);
    Element u1 = rand_element(rng, *sp2, {x, y});
    Element u2 = rand_element(rng, *sp2, {x, y});
    Element s = u1 + u2;
    Element lhs = m.eval(std::vector<Element>{s, u1});
    Element rhs = m.eval(std::vector<Element>{u1, u1}) +
                  m.eval(std::vector<Element>{u2, u1});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("evaluate matches a dense tensor oracle on a 3-dim space") {
  // dense oracle: symmetrize the table to all ordered tuples, then contract
  auto sp = std::make_shared<Space>("D", 9);
  int e0 = sp->add({"e0", 0, 1});
  int e1 = sp->add({"e1", 1, 1});
  int e2 = sp->add({"e2", 2, 2});
  Rng rng(11);
  MultiMap m(sp, sp, 2, 0);
  for (const MultiIndex& mi : symmetric_basis(*sp, 2)) {
    Element val;
    int dout = multiindex_degree(*sp, mi) + 0;
    for (int id = 0; id < sp->dim(); ++id)
      if (sp->degree(id) == dout && sp->weight(id) >= multiindex_weight(*sp, mi))
        val.add_term(id, rng.rat());
    m.set(mi, val);
  }
  // dense order-sensitive table
  std::map<std::pair<int, int>, Element> dense;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::vector<int> t{i, j};
      int sign = 1;
      if (sort_with_sign(*sp, t, sign))
        dense[{i, j}] = Rat(sign) * m.at(t);
    }
  for (int trial = 0; trial < 10; ++trial) {
    Element u = rand_element(rng, *sp, {e0, e1, e2});
    Element v = rand_element(rng, *sp, {e0, e1, e2});
    Element brute;
    for (const auto& [iu, cu] : u.terms())
      for (const auto& [iv, cv] : v.terms()) {
        auto it = dense.find({iu, iv});
        if (it == dense.end()) continue;
        Element t = it->second;
        t *= cu * cv;
        brute += t;
      }
    CHECK(m.eval(std::vector<Element>{u, v}) == brute);
  }
}

TEST_CASE("MultiMap::set guards degree homogeneity and weight additivity") {
  auto sp = std::make_shared<Space>("W", 5);
  int a = sp->add({"a", 0, 1});
  int b = sp->add({"b", 0, 2});
  int c = sp->add({"c", 1, 3});
  int d = sp->add({"d", 2, 1});
  MultiMap m(sp, sp, 2, 1);
  m.set({a, b}, Element::unit(c));                      // degree 1, weight 3 >= 3: ok
  CHECK_THROWS_AS(m.set({b, b}, Element::unit(c)), error);  // weight 3 < 4
  CHECK_THROWS_AS(m.set({a, a}, Element::unit(d)), error);  // degree 2 != 1
}

TEST_CASE("weight additivity audited on homogeneous inputs") {
  auto sp = std::make_shared<Space>("W2", 6);
  int a = sp->add({"a", 0, 1});
  int b = sp->add({"b", 0, 2});
  int c = sp->add({"c", 1, 3});
  MultiMap m(sp, sp, 2, 1);
  m.set({a, b}, Element::unit(c));
  Element out = m.eval(std::vector<Element>{Element::unit(a), Element::unit(b)});
  CHECK(element_weight(*sp, out) >=
        element_weight(*sp, Element::unit(a)) + element_weight(*sp, Element::unit(b)));
}
