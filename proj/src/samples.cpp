#include "linfty/samples.hpp"

namespace linfty {

Dgla heis_dgla() {
  auto sp = std::make_shared<Space>("heis", 3);
  int X = sp->add({"X", 0, 1});
  int Y = sp->add({"Y", 0, 1});
  int Z = sp->add({"Z", 0, 2});
  Dgla g;
  g.space = sp;
  g.set_bracket(X, Y, Element::unit(Z));
  return g;
}

std::shared_ptr<const Linfty> heis() {
  static std::shared_ptr<const Linfty> L =
      std::make_shared<Linfty>(dgla_import(heis_dgla()));
  return L;
}

Dgla ut4_dgla() {
  auto sp = std::make_shared<Space>("ut4", 4);
  int e12 = sp->add({"e12", 0, 1});
  int e23 = sp->add({"e23", 0, 1});
  int e34 = sp->add({"e34", 0, 1});
  int e13 = sp->add({"e13", 0, 2});
  int e24 = sp->add({"e24", 0, 2});
  int e14 = sp->add({"e14", 0, 3});
  Dgla g;
  g.space = sp;
  g.set_bracket(e12, e23, Element::unit(e13));
  g.set_bracket(e23, e34, Element::unit(e24));
  g.set_bracket(e12, e24, Element::unit(e14));
  g.set_bracket(e13, e34, Element::unit(e14));
  g.set_bracket(e12, e34, Element());
  g.set_bracket(e13, e24, Element());
  g.set_bracket(e12, e13, Element());
  g.set_bracket(e12, e14, Element());
  g.set_bracket(e23, e13, Element());
  g.set_bracket(e23, e24, Element());
  g.set_bracket(e23, e14, Element());
  g.set_bracket(e34, e14, Element());
  g.set_bracket(e34, e24, Element());
  g.set_bracket(e13, e14, Element());
  g.set_bracket(e24, e14, Element());
  return g;
}

std::shared_ptr<const Linfty> ut4() {
  static std::shared_ptr<const Linfty> L =
      std::make_shared<Linfty>(dgla_import(ut4_dgla()));
  return L;
}

Dgla heis1f_dgla() {
  auto sp = std::make_shared<Space>("heis1f", 3);
  int X0 = sp->add({"X0", 0, 1});
  int Y0 = sp->add({"Y0", 0, 1});
  int Z0 = sp->add({"Z0", 0, 2});
  int X1 = sp->add({"X1", 1, 1});
  int Y1 = sp->add({"Y1", 1, 1});
  int Z1 = sp->add({"Z1", 1, 2});
  Dgla g;
  g.space = sp;
  g.set_bracket(X0, Y0, Element::unit(Z0));
  g.set_bracket(X0, Y1, Element::unit(Z1));
  g.set_bracket(X1, Y0, Element::unit(Z1));
  return g;
}

std::shared_ptr<const Linfty> heis1f() {
  static std::shared_ptr<const Linfty> L =
      std::make_shared<Linfty>(dgla_import(heis1f_dgla()));
  return L;
}

std::shared_ptr<const Linfty> abelian_point(int shifted_degree) {
  auto sp = std::make_shared<Space>(
      "pt(" + std::to_string(shifted_degree) + ")", 2);
  sp->add({"g", shifted_degree, 1});
  return std::make_shared<Linfty>(Linfty(sp));
}

std::shared_ptr<const Linfty> two_term_acyclic(int d) {
  auto sp = std::make_shared<Space>("acy(" + std::to_string(d) + ")", 2);
  int a = sp->add({"a", d, 1});
  int b = sp->add({"b", d + 1, 1});
  Linfty L(sp);
  L.add_q_term(1, {a}, b, Rat(1));
  return std::make_shared<Linfty>(std::move(L));
}

std::shared_ptr<const Linfty> zero_algebra() {
  auto sp = std::make_shared<Space>("zero", 1);
  return std::make_shared<Linfty>(Linfty(sp));
}

std::shared_ptr<const Linfty> random_complex(int dim, std::uint64_t seed) {
  // deterministic SplitMix64 (kept local: test RNG must not drift)
  std::uint64_t state = seed;
  auto next = [&state]() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  auto sp = std::make_shared<Space>("rnd" + std::to_string(seed), 2);
  std::vector<std::pair<int, int>> pairs;  // acyclic pieces (a, b)
  int made = 0;
  while (made < dim) {
    int d = static_cast<int>(next() % 5) - 2;
    if (made + 2 <= dim && (next() & 1)) {
      int a = sp->add({"g" + std::to_string(made), d, 1});
      int b = sp->add({"g" + std::to_string(made + 1), d + 1, 1});
      pairs.push_back({a, b});
      made += 2;
    } else {
      sp->add({"g" + std::to_string(made), d, 1});
      made += 1;
    }
  }
  // q_1' = T d T^{-1} for a random unit-triangular degree-preserving T
  // (exact and terminating; q_1'^2 = 0 by construction)
  Linfty L(sp);
  MultiMap q1(sp, sp, 1, 1);
  std::map<int, std::vector<int>> blocks;
  for (int id = 0; id < sp->dim(); ++id) blocks[sp->degree(id)].push_back(id);
  std::map<std::pair<int, int>, Rat> T;  // strictly-upper part of T within blocks
  for (auto& [d, ids] : blocks)
    for (size_t i = 0; i < ids.size(); ++i)
      for (size_t j = i + 1; j < ids.size(); ++j)
        if (next() & 1)
          T[{ids[i], ids[j]}] = Rat(static_cast<int>(next() % 5) - 2);
  std::map<int, Element> images;  // basis id -> T(e_id)
  for (int id = 0; id < sp->dim(); ++id) {
    Element img = Element::unit(id);
    for (const auto& [key, u] : T)
      if (key.second == id) img.add_term(key.first, u);
    images[id] = img;
  }
  // T^{-1} columns by back substitution (unit triangular in block order)
  std::map<int, Element> inv;
  for (int id = 0; id < sp->dim(); ++id) {
    Element col = Element::unit(id);
    // e_id = T(x) => x = e_id - U x, iterate
    Element x = col;
    for (int rounds = 0; rounds <= sp->dim(); ++rounds) {
      Element ux;
      for (const auto& [xid, c] : x.terms())
        for (const auto& [key, u] : T)
          if (key.second == xid) ux.add_term(key.first, u * c);
      Element nx = col - ux;
      if (nx == x) break;
      x = nx;
    }
    inv[id] = x;
  }
  auto d_raw = [&](int id) {
    for (const auto& [a, b] : pairs)
      if (a == id) return Element::unit(b);
    return Element();
  };
  for (int id = 0; id < sp->dim(); ++id) {
    // q_1(e_id) = T(d(T^{-1}(e_id)))
    Element v;
    for (const auto& [xid, c] : inv[id].terms()) {
      Element dr = d_raw(xid);
      dr *= c;
      v += dr;
    }
    Element out;
    for (const auto& [xid, c] : v.terms()) {
      Element img = images[xid];
      img *= c;
      out += img;
    }
    if (!out.is_zero()) q1.set({id}, std::move(out));
  }
  if (!q1.is_zero()) L.set_q(1, std::move(q1));
  return std::make_shared<Linfty>(std::move(L));
}

CentralExtension ext_trivial() {
  CentralExtension E;
  E.total = heis();
  E.base = heis();
  E.projection = Morphism::identity(heis()->space_ptr());
  return E;
}

namespace {

std::shared_ptr<const Linfty> square_total(bool with_v) {
  auto sp = std::make_shared<Space>(with_v ? "sqv" : "sq", 3);
  int w = sp->add({"w", 0, 1});
  int u = sp->add({"u", 1, 2});
  Linfty L(sp);
  L.add_q_term(2, {w, w}, u, Rat(1));
  if (with_v) {
    int v = sp->add({"v", 0, 2});
    L.add_q_term(1, {v}, u, Rat(1));
  }
  return std::make_shared<Linfty>(std::move(L));
}

std::shared_ptr<const Linfty> square_base() {
  auto sp = std::make_shared<Space>("sqbase", 3);
  sp->add({"w", 0, 1});
  return std::make_shared<Linfty>(Linfty(sp));
}

}  // namespace

CentralExtension ext_square() {
  CentralExtension E;
  E.total = square_total(false);
  E.base = square_base();
  MultiMap f1(E.total->space_ptr(), E.base->space_ptr(), 1, 0);
  f1.set({E.total->space().find("w")}, Element::unit(E.base->space().find("w")));
  E.projection = Morphism::strict(E.total->space_ptr(), E.base->space_ptr(),
                                  std::move(f1));
  E.kernel_ids = {E.total->space().find("u")};
  return E;
}

CentralExtension ext_square_acyclic() {
  CentralExtension E;
  E.total = square_total(true);
  E.base = square_base();
  MultiMap f1(E.total->space_ptr(), E.base->space_ptr(), 1, 0);
  f1.set({E.total->space().find("w")}, Element::unit(E.base->space().find("w")));
  E.projection = Morphism::strict(E.total->space_ptr(), E.base->space_ptr(),
                                  std::move(f1));
  E.kernel_ids = {E.total->space().find("u"), E.total->space().find("v")};
  return E;
}

CentralExtension ext_pair() {
  // unshifted: x,y in degree 1, u in degree 2, [x,y] = u; imported
  auto sp = std::make_shared<Space>("pairext", 3);
  int x = sp->add({"x", 1, 1});
  int y = sp->add({"y", 1, 1});
  int u = sp->add({"u", 2, 2});
  Dgla g;
  g.space = sp;
  g.set_bracket(x, y, Element::unit(u));
  g.set_bracket(x, x, Element());
  g.set_bracket(y, y, Element());
  g.set_bracket(x, u, Element());
  g.set_bracket(y, u, Element());
  g.set_bracket(u, u, Element());
  auto total = std::make_shared<Linfty>(dgla_import(g));

  auto bsp = std::make_shared<Space>("pairbase", 3);
  int bx = bsp->add({"x", 0, 1});
  int by = bsp->add({"y", 0, 1});
  auto base = std::make_shared<Linfty>(Linfty(bsp));

  CentralExtension E;
  E.total = total;
  E.base = base;
  MultiMap f1(total->space_ptr(), bsp, 1, 0);
  f1.set({total->space().find("x")}, Element::unit(bx));
  f1.set({total->space().find("y")}, Element::unit(by));
  E.projection = Morphism::strict(total->space_ptr(), bsp, std::move(f1));
  E.kernel_ids = {total->space().find("u")};
  return E;
}

std::pair<Morphism, Morphism> ext_square_scaling(const CentralExtension& E,
                                                 const Rat& lam) {
  int w = E.total->space().find("w");
  int u = E.total->space().find("u");
  MultiMap ft(E.total->space_ptr(), E.total->space_ptr(), 1, 0);
  ft.set({w}, Element::unit(w, lam));
  ft.set({u}, Element::unit(u, lam * lam));
  Morphism phiL = Morphism::strict(E.total->space_ptr(), E.total->space_ptr(),
                                   std::move(ft));
  int bw = E.base->space().find("w");
  MultiMap fb(E.base->space_ptr(), E.base->space_ptr(), 1, 0);
  fb.set({bw}, Element::unit(bw, lam));
  Morphism phiM = Morphism::strict(E.base->space_ptr(), E.base->space_ptr(),
                                   std::move(fb));
  return {phiL, phiM};
}

Mat4 Mat4::zero() {
  Mat4 m;
  for (auto& row : m.a)
    for (auto& x : row) x = 0;
  return m;
}

Mat4 Mat4::eye() {
  Mat4 m = zero();
  for (int i = 0; i < 4; ++i) m.a[i][i] = 1;
  return m;
}

Mat4 Mat4::mul(const Mat4& o) const {
  Mat4 r = zero();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < 4; ++j) r.a[i][j] += a[i][k] * o.a[k][j];
    }
  return r;
}

Mat4 Mat4::add(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
  return r;
}

Mat4 Mat4::scale(const Rat& c) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.a[i][j] = a[i][j] * c;
  return r;
}

bool Mat4::operator==(const Mat4& o) const {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (a[i][j] != o.a[i][j]) return false;
  return true;
}

Mat4 mat_exp(const Mat4& m) {
  Mat4 out = Mat4::eye();
  Mat4 pw = Mat4::eye();
  for (int k = 1; k <= 4; ++k) {
    pw = pw.mul(m);
    out = out.add(pw.scale(1 / factorial(k)));
  }
  return out;
}

Mat4 mat_log(const Mat4& m) {
  Mat4 x = m.add(Mat4::eye().scale(Rat(-1)));  // m - I, nilpotent
  Mat4 out = Mat4::zero();
  Mat4 pw = Mat4::eye();
  for (int k = 1; k <= 4; ++k) {
    pw = pw.mul(x);
    Rat c = Rat((k % 2) ? 1 : -1) / k;
    out = out.add(pw.scale(c));
  }
  return out;
}

Mat4 heis_matrix(const Element& x, const Linfty& L) {
  Mat4 m = Mat4::zero();
  m.a[0][1] = x.coeff(L.space().find("X"));
  m.a[1][2] = x.coeff(L.space().find("Y"));
  m.a[0][2] = x.coeff(L.space().find("Z"));
  return m;
}

Element heis_element(const Mat4& m, const Linfty& L) {
  Element e;
  e.add_term(L.space().find("X"), m.a[0][1]);
  e.add_term(L.space().find("Y"), m.a[1][2]);
  e.add_term(L.space().find("Z"), m.a[0][2]);
  return e;
}

Mat4 ut4_matrix(const Element& x, const Linfty& L) {
  Mat4 m = Mat4::zero();
  m.a[0][1] = x.coeff(L.space().find("e12"));
  m.a[1][2] = x.coeff(L.space().find("e23"));
  m.a[2][3] = x.coeff(L.space().find("e34"));
  m.a[0][2] = x.coeff(L.space().find("e13"));
  m.a[1][3] = x.coeff(L.space().find("e24"));
  m.a[0][3] = x.coeff(L.space().find("e14"));
  return m;
}

Element ut4_element(const Mat4& m, const Linfty& L) {
  Element e;
  e.add_term(L.space().find("e12"), m.a[0][1]);
  e.add_term(L.space().find("e23"), m.a[1][2]);
  e.add_term(L.space().find("e34"), m.a[2][3]);
  e.add_term(L.space().find("e13"), m.a[0][2]);
  e.add_term(L.space().find("e24"), m.a[1][3]);
  e.add_term(L.space().find("e14"), m.a[0][3]);
  return e;
}

}  // namespace linfty
