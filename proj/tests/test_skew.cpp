#include "doctest.h"

#include "ncann/dsl.hpp"
#include "test_util.hpp"

using namespace ncann;
using namespace ncann::testutil;

namespace {
const Bounds kWide{1 << 20, 1 << 20};
}

TEST_CASE("x * b = alpha(b) * x") {
  const Presentation& P = section4();
  Endomorphism sigma = shift_endomorphism(P, 6);
  SkewPoly x;
  x.coeffs = {RingElem{}, one_elem()};
  SkewPoly b0 = poly_from_coeffs({E(P, "b[0]")});
  SkewPoly prod = skew_mul_poly(x, b0, sigma, P, Bounds{6, 2});
  REQUIRE(prod.degree() == 1);
  CHECK(prod.coeffs[0].is_zero());
  CHECK(elem_str(P, prod.coeffs[1]) == "b[1]");
}

TEST_CASE("skew product collapses along the identified products of the cedo ring") {
  // Over GF(3) the rewritten coefficient keeps its sign visible.
  const Presentation& C = cedo3();
  Endomorphism id = Endomorphism::make_identity();
  Bounds b{2, 2};
  SkewPoly f;
  f.coeffs = {E(C, "a[0,0]"), negate(C.field, E(C, "a[1,0]"))};
  SkewPoly g = poly_from_coeffs({E(C, "b[1,0]")});
  SkewPoly prod = skew_mul_poly(f, g, id, C, b);
  REQUIRE(prod.degree() == 1);
  CHECK(elem_str(C, prod.coeffs[0]) == "a[0,0]*b[1,0]");
  CHECK(elem_str(C, prod.coeffs[1]) == "2*a[0,0]*b[1,0]");

  // f * 1 = f
  SkewPoly one = poly_from_coeffs({one_elem()});
  CHECK(skew_mul_poly(f, one, id, C, b) == f);
}

TEST_CASE("series product: the cedo annihilating series kills its factors") {
  const Presentation& C = cedo2();
  Endomorphism id = Endomorphism::make_identity();
  const int t = 4, n = 3;
  TruncSeries w = TruncSeries::zero(t);
  RingElem c0 = E(C, "b[1,3]");
  accumulate(c0, C.field, W(C, "b[2,3]"), C.field.neg(1));
  w.coeffs[0] = c0;
  w.coeffs[1] = E(C, "b[1,3]");
  w.coeffs[2] = E(C, "b[2,3]");
  for (int i = 0; i <= n; ++i) {
    TruncSeries f = TruncSeries::zero(t);
    f.coeffs[0] = E(C, "a[0," + std::to_string(i) + "]");
    f.coeffs[1] = negate(C.field, E(C, "a[1," + std::to_string(i) + "]"));
    CHECK(skew_mul_series(f, w, id, C, Bounds{3, 2}).is_zero());
  }
  // 0 * g = 0
  CHECK(skew_mul_series(TruncSeries::zero(t), w, id, C, Bounds{3, 2}).is_zero());
  // mismatched orders are rejected
  CHECK_THROWS_AS(skew_mul_series(TruncSeries::zero(3), w, id, C, Bounds{3, 2}),
                  NcannError);
}

TEST_CASE("the armendariz generating series multiply to zero at order 8") {
  const Presentation& A = armendariz();
  Endomorphism id = Endomorphism::make_identity();
  const int t = 8;
  TruncSeries f = TruncSeries::zero(t), g = TruncSeries::zero(t);
  for (int i = 0; i <= t; ++i) {
    f.coeffs[static_cast<std::size_t>(i)] = E(A, "a[" + std::to_string(i) + "]");
    g.coeffs[static_cast<std::size_t>(i)] = E(A, "b[" + std::to_string(i) + "]");
  }
  CHECK(skew_mul_series(f, g, id, A, Bounds{t, 2}).is_zero());
}

TEST_CASE("series addition and slice-vector round trips") {
  const Presentation& P = section4();
  TruncSeries a = TruncSeries::zero(2), b = TruncSeries::zero(2);
  a.coeffs[0] = E(P, "a[0]");
  a.coeffs[1] = E(P, "b[1]");
  b.coeffs[1] = E(P, "b[1]");
  b.coeffs[2] = E(P, "b[0]*a[1]");
  TruncSeries sum = add_series(P.field, a, b);
  CHECK(elem_str(P, sum.coeffs[0]) == "a[0]");
  CHECK(sum.coeffs[1].is_zero());  // GF(2): b[1] + b[1] = 0
  CHECK(elem_str(P, sum.coeffs[2]) == "b[0]*a[1]");
  CHECK_THROWS_AS(add_series(P.field, a, TruncSeries::zero(3)), NcannError);

  Slice s = make_series_slice(P, Bounds{2, 2}, 2);
  CHECK(vec_to_series(s, to_vec(s, sum)) == sum);
}

TEST_CASE("apply_endomorphism: identity, shift, and inverse failure") {
  const Presentation& P = section4();
  Slice s = make_ring_slice(P, Bounds{3, 2});
  std::mt19937_64 rng(17);
  Endomorphism id = Endomorphism::make_identity();
  for (int i = 0; i < 20; ++i) {
    RingElem e = random_elem(s.words, P.field, rng, 3);
    CHECK(apply_endomorphism(id, e, 5, P, Bounds{3, 2}) == e);
  }

  Endomorphism sigma = shift_endomorphism(P, 6);
  CHECK(elem_str(P, apply_endomorphism(sigma, E(P, "b[0]*a[1]"), 1, P, Bounds{5, 2})) ==
        "b[1]*a[2]");
  CHECK(validate_endomorphism(sigma, P, Bounds{5, 2}).verdict ==
        CheckReport::Verdict::pass);

  CHECK_THROWS_AS(apply_endomorphism(sigma, E(P, "a[0]"), -1, P, Bounds{3, 2}),
                  NcannError);
  try {
    apply_endomorphism(sigma, E(P, "a[0]"), -1, P, Bounds{3, 2});
  } catch (const NcannError& e) {
    CHECK(e.kind() == ErrorKind::no_inverse);
  }
}

TEST_CASE("relation-violating generator maps are rejected at construction") {
  const Presentation& P = section4();
  // Swapping the two families breaks a*b = 0 (the image b*a is not always 0).
  std::map<GeneratorId, RingElem> images;
  for (const GeneratorId& g : generators_in_bounds(P, Bounds{4, 1})) {
    GeneratorId img = g;
    img.family = g.family == P.family_id("a") ? P.family_id("b") : P.family_id("a");
    images[g] = term_elem(Word{{img}});
  }
  CHECK_THROWS_AS(Endomorphism::from_images(P, std::move(images),
                                            Endomorphism::Kind::endo, {}, Bounds{3, 2}),
                  NcannError);
}

TEST_CASE("endomorphism schema files parse and validate") {
  const Presentation& P = section4();
  Endomorphism sigma = parse_endomorphism(
      "kind endomorphism;\n"
      "gen a[i] -> a[i+1];\n"
      "gen b[j] -> b[j+1];\n",
      P, 6);
  CHECK(elem_str(P, apply_endomorphism(sigma, E(P, "b[0]*a[1]"), 1, P, Bounds{5, 2})) ==
        "b[1]*a[2]");

  // An automorphism must supply a working inverse.
  Presentation F = parse_presentation("field 2;\nfamily g(1);\n");
  Endomorphism noop = parse_endomorphism(
      "kind automorphism;\n"
      "gen g[i] -> g[i];\n"
      "inv g[i] -> g[i];\n",
      F, 4);
  RingElem e = parse_elem("g[1]*g[2]", F, Bounds{4, 4});
  CHECK(apply_endomorphism(noop, e, -3, F, Bounds{4, 4}) == e);
}

TEST_CASE("endomorphism error paths: missing images and broken inverses") {
  const Presentation& P = section4();
  // applying beyond the tabulated capacity is an index-bounds error
  Endomorphism sigma = shift_endomorphism(P, 3);
  CHECK_THROWS_AS(apply_endomorphism(sigma, E(P, "a[5]"), 1, P, Bounds{6, 2}),
                  NcannError);
  try {
    apply_endomorphism(sigma, E(P, "a[5]"), 1, P, Bounds{6, 2});
  } catch (const NcannError& e) {
    CHECK(e.kind() == ErrorKind::index_bounds);
  }

  // schema files must cover every family
  CHECK_THROWS_AS(parse_endomorphism("kind endomorphism;\ngen a[i] -> a[i+1];\n", P, 3),
                  NcannError);

  // a declared automorphism whose inverse does not compose to the identity
  Presentation F = parse_presentation("field 2;\nfamily g(1);\n");
  CHECK_THROWS_AS(parse_endomorphism("kind automorphism;\n"
                                     "gen g[i] -> g[i+1];\n"
                                     "inv g[i] -> g[i+1];\n",
                                     F, 3),
                  NcannError);
}

TEST_CASE("coefficient_set collects coefficients and always contains zero") {
  const Presentation& P = section4();
  std::vector<SkewPoly> V{poly_from_coeffs({E(P, "a[0]"), E(P, "b[1]")})};
  std::vector<RingElem> cs = coefficient_set(std::span<const SkewPoly>(V));
  REQUIRE(cs.size() == 3);
  CHECK(cs[0].is_zero());
  CHECK(elem_str(P, cs[1]) == "a[0]");
  CHECK(elem_str(P, cs[2]) == "b[1]");

  std::vector<SkewPoly> empty;
  std::vector<RingElem> cs0 = coefficient_set(std::span<const SkewPoly>(empty));
  REQUIRE(cs0.size() == 1);
  CHECK(cs0[0].is_zero());

  std::vector<SkewPoly> dup{poly_from_coeffs({E(P, "a[0]"), E(P, "a[0]")}),
                            poly_from_coeffs({E(P, "a[0]")})};
  CHECK(coefficient_set(std::span<const SkewPoly>(dup)).size() == 2);

  TruncSeries t = TruncSeries::zero(2);
  t.coeffs[1] = E(P, "b[0]");
  std::vector<TruncSeries> sv{t};
  std::vector<RingElem> cs2 = coefficient_set(std::span<const TruncSeries>(sv));
  REQUIRE(cs2.size() == 2);
  CHECK(cs2[0].is_zero());
  CHECK(elem_str(P, cs2[1]) == "b[0]");
}

TEST_CASE("psi restricts polynomial annihilators to their constant members") {
  const Presentation& P = section4();
  Bounds b{3, 1};
  AnnQuery q;
  q.side = Side::left;
  q.elems = std::vector<SkewPoly>{poly_from_coeffs({E(P, "a[0]")}),
                                  poly_from_coeffs({E(P, "a[1]")})};
  q.bounds = b;
  q.x_degree = 1;
  SubspaceBasis B = annihilator(q, P);
  CHECK(B.dim() == 6);
  SubspaceBasis R = psi_restrict(B, P, b);
  REQUIRE(R.dim() == 3);
  CHECK(elem_str(P, vec_to_elem(R.slice, R.rows[0])) == "b[1]");
  CHECK(elem_str(P, vec_to_elem(R.slice, R.rows[1])) == "b[2]");
  CHECK(elem_str(P, vec_to_elem(R.slice, R.rows[2])) == "b[3]");

  // restriction into an enlarged ring slice re-indexes the same members
  SubspaceBasis R_big = psi_restrict(B, P, Bounds{4, 2});
  CHECK(R_big.dim() == 3);
  CHECK(R_big.contains(E(P, "b[2]"), P.field));

  // zero subspace and full slice restrict trivially
  SubspaceBasis zero;
  zero.slice = make_poly_slice(P, b, 1);
  CHECK(psi_restrict(zero, P, b).is_zero());

  AnnQuery whole;
  whole.side = Side::left;
  whole.elems = std::vector<SkewPoly>{SkewPoly{}};
  whole.bounds = b;
  whole.x_degree = 1;
  SubspaceBasis full = annihilator(whole, P);
  CHECK(full.dim() == full.slice.dim());
  CHECK(psi_restrict(full, P, b).dim() == make_ring_slice(P, b).dim());
}

TEST_CASE("phi after psi is the identity on polynomial annihilators of the "
          "armendariz ring") {
  const Presentation& A = armendariz();
  Endomorphism id = Endomorphism::make_identity();
  Bounds b{2, 2};
  Slice s = make_ring_slice(A, b);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 12; ++i) {
    std::vector<SkewPoly> V;
    for (int m = 0; m < 2; ++m) {
      SkewPoly f;
      for (int k = 0; k < 3; ++k) f.coeffs.push_back(random_elem(s.words, A.field, rng, 2));
      f.trim();
      V.push_back(std::move(f));
    }
    AnnQuery q;
    q.side = Side::left;
    q.elems = V;
    q.bounds = b;
    q.x_degree = 2;
    SubspaceBasis B = annihilator(q, A);
    SubspaceBasis down = psi_restrict(B, A, b);
    SubspaceBasis up = phi_extend(down, A, b, 2, id);
    CHECK(up.same_subspace(B));
  }
}

TEST_CASE("the truncated series annihilator contains the generating witness while "
          "componentwise products do not vanish") {
  const Presentation& A = armendariz();
  const int t = 6;
  TruncSeries f = TruncSeries::zero(t), g = TruncSeries::zero(t);
  for (int i = 0; i <= t; ++i) {
    f.coeffs[static_cast<std::size_t>(i)] = E(A, "a[" + std::to_string(i) + "]");
    g.coeffs[static_cast<std::size_t>(i)] = E(A, "b[" + std::to_string(i) + "]");
  }
  AnnQuery q;
  q.side = Side::right;
  q.elems = std::vector<TruncSeries>{f};
  q.bounds = Bounds{t, 2};
  q.order = t;
  SubspaceBasis B = annihilator(q, A);
  CHECK(B.contains(to_vec(B.slice, g), A.field));
  // ... yet the coefficient pair (1,0) multiplies to something nonzero
  CHECK(!multiply(E(A, "a[1]"), E(A, "b[0]"), A, kWide).is_zero());
}

TEST_CASE("phi extends ring annihilators into the polynomial slice") {
  const Presentation& P = section4();
  Bounds b{3, 1};
  Endomorphism id = Endomorphism::make_identity();
  AnnQuery q;
  q.side = Side::left;
  q.elems = std::vector<RingElem>{E(P, "a[0]"), E(P, "a[1]")};
  q.bounds = b;
  SubspaceBasis L = annihilator(q, P);
  REQUIRE(L.dim() == 3);

  SubspaceBasis Phi = phi_extend(L, P, b, 1, id);
  CHECK(Phi.dim() == 6);  // b_k and b_k x for k = 1..3
  CHECK(psi_restrict(Phi, P, b).same_subspace(L));

  SubspaceBasis zero;
  zero.slice = make_ring_slice(P, b);
  CHECK(phi_extend(zero, P, b, 1, id).is_zero());

  // On this pure-b subspace the shift map moves indices up by one; images
  // that stay within bounds agree with the identity extension, the one word
  // shifted out of bounds is dropped.
  Endomorphism sigma = shift_endomorphism(P, 6);
  SubspaceBasis Phi_sigma = phi_extend(L, P, b, 1, sigma);
  CHECK(Phi_sigma.dim() == 5);  // b_1..b_3 at x^0, b_2..b_3 at x^1
  for (const SparseVec& row : Phi_sigma.rows)
    CHECK(Phi.contains(row, P.field));
  CHECK(psi_restrict(Phi_sigma, P, b).same_subspace(psi_restrict(Phi, P, b)));
}
