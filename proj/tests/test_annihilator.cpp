#include "doctest.h"

#include "test_util.hpp"

using namespace ncann;
using namespace ncann::testutil;

namespace {
const Bounds kWide{1 << 20, 1 << 20};
}

TEST_CASE("left annihilator of {a0,a1} in the section4 ring") {
  const Presentation& P = section4();
  AnnQuery q;
  q.side = Side::left;
  q.elems = std::vector<RingElem>{E(P, "a[0]"), E(P, "a[1]")};
  q.bounds = Bounds{3, 2};
  SubspaceBasis B = annihilator(q, P);
  REQUIRE(B.dim() == 3);
  CHECK(elem_str(P, vec_to_elem(B.slice, B.rows[0])) == "b[1]");
  CHECK(elem_str(P, vec_to_elem(B.slice, B.rows[1])) == "b[2]");
  CHECK(elem_str(P, vec_to_elem(B.slice, B.rows[2])) == "b[3]");
}

TEST_CASE("right annihilator of {b0} matches the per-word oracle") {
  const Presentation& P = section4();
  Bounds b{2, 2};
  AnnQuery q;
  q.side = Side::right;
  q.elems = std::vector<RingElem>{E(P, "b[0]")};
  q.bounds = b;
  SubspaceBasis B = annihilator(q, P);
  CHECK(B.dim() == 10);

  // Word-level oracle: in a monomial presentation the annihilator is the
  // span of the annihilating words.
  Slice s = make_ring_slice(P, b);
  std::vector<SparseVec> expected;
  RingElem b0 = E(P, "b[0]");
  for (std::int32_t wi = 0; wi < s.word_count(); ++wi) {
    RingElem prod = multiply(b0, term_elem(s.words[static_cast<std::size_t>(wi)]), P, kWide);
    if (prod.is_zero()) expected.push_back(SparseVec{{{wi, Coeff{1}}}});
  }
  CHECK(expected.size() == 10);
  CHECK(reduced_span(P.field, expected) == B.rows);
}

TEST_CASE("the left annihilator oracle agrees on the a-generator slice statement") {
  // Word-level scan for the expanded generator family, at two bounds.
  const Presentation& P = section4();
  for (int N : {2, 3}) {
    Bounds b{N, 2};
    std::vector<RingElem> X = section4_a_generators(P, N);
    AnnQuery q;
    q.side = Side::left;
    q.elems = X;
    q.bounds = b;
    SubspaceBasis B = annihilator(q, P);
    Slice s = make_ring_slice(P, b);
    std::vector<SparseVec> expected;
    for (std::int32_t wi = 0; wi < s.word_count(); ++wi) {
      bool kills_all = true;
      for (const RingElem& x : X)
        kills_all =
            kills_all &&
            multiply(term_elem(s.words[static_cast<std::size_t>(wi)]), x, P, kWide).is_zero();
      if (kills_all) expected.push_back(SparseVec{{{wi, Coeff{1}}}});
    }
    CHECK(reduced_span(P.field, expected) == B.rows);
    REQUIRE(B.dim() == 1);
    CHECK(elem_str(P, vec_to_elem(B.slice, B.rows[0])) ==
          "b[" + std::to_string(N) + "]");
  }
}

TEST_CASE("annihilator of {1} is zero and of {0} is the whole slice") {
  const Presentation& P = armendariz();
  AnnQuery q;
  q.side = Side::left;
  q.elems = std::vector<RingElem>{one_elem()};
  q.bounds = Bounds{2, 2};
  CHECK(annihilator(q, P).is_zero());

  q.elems = std::vector<RingElem>{RingElem{}};
  SubspaceBasis whole = annihilator(q, P);
  CHECK(whole.dim() == whole.slice.dim());
}

TEST_CASE("annihilator rejects sets that do not fit the slice") {
  const Presentation& P = section4();
  AnnQuery q;
  q.side = Side::left;
  q.elems = std::vector<RingElem>{E(P, "a[0]*a[1]*a[0]")};
  q.bounds = Bounds{2, 2};
  CHECK_THROWS_AS(annihilator(q, P), NcannError);
}

TEST_CASE("is_faithful_upto distinguishes faithful witnesses from slice artifacts") {
  const Presentation& P = section4();
  Bounds b{3, 2};
  // the expanded a-family always leaves b_N alive in the slice
  FaithfulResult fa = is_faithful_upto(section4_a_generators(P, 3), Side::left, P, b);
  CHECK(!fa.faithful);
  CHECK(fa.ann.contains(E(P, "b[3]"), P.field));

  // a unit-component element annihilates nothing on either side
  RingElem r = E(P, "1 + a[0] + b[0]");
  CHECK(is_faithful_upto({r}, Side::left, P, b).faithful);
  CHECK(is_faithful_upto({r}, Side::right, P, b).faithful);

  FaithfulResult fz = is_faithful_upto({RingElem{}}, Side::left, P, b);
  CHECK(!fz.faithful);
  CHECK(fz.ann.dim() == fz.ann.slice.dim());
}

TEST_CASE("zip search finds singleton witnesses through unit components") {
  const Presentation& P = section4();
  AnnQuery q;
  q.side = Side::right;
  q.elems = std::vector<RingElem>{E(P, "1 + b[0]"), E(P, "a[0]")};
  q.bounds = Bounds{3, 2};
  ZipSearchResult res = zip_witness_search(q, P, 2);
  REQUIRE(res.chosen.has_value());
  REQUIRE(res.chosen->size() == 1);
  CHECK((*res.chosen)[0] == 0);  // the unit-component element

  q.elems = std::vector<RingElem>{one_elem()};
  ZipSearchResult res1 = zip_witness_search(q, P, 1);
  REQUIRE(res1.chosen.has_value());
  CHECK(res1.chosen->size() == 1);
}

TEST_CASE("zip search reports the obstruction for the cedo series family") {
  const Presentation& C = cedo2();
  const int t = 4, n = 2;
  std::vector<TruncSeries> X;
  for (int i = 0; i <= n; ++i) {
    TruncSeries f = TruncSeries::zero(t);
    f.coeffs[0] = E(C, "a[0," + std::to_string(i) + "]");
    f.coeffs[1] = negate(C.field, E(C, "a[1," + std::to_string(i) + "]"));
    X.push_back(std::move(f));
  }
  AnnQuery q;
  q.side = Side::right;
  q.elems = X;
  q.bounds = Bounds{n, 1};
  q.order = t;
  ZipSearchResult res = zip_witness_search(q, C, static_cast<int>(X.size()));
  CHECK(!res.chosen.has_value());
  CHECK(!res.ann_full.is_zero());

  // the annihilating series is a member of the obstruction space
  TruncSeries w = TruncSeries::zero(t);
  RingElem c0 = E(C, "b[1,2]");
  accumulate(c0, C.field, W(C, "b[2,2]"), C.field.neg(1));
  w.coeffs[0] = c0;
  w.coeffs[1] = E(C, "b[1,2]");
  w.coeffs[2] = E(C, "b[2,2]");
  CHECK(res.ann_full.contains(to_vec(res.ann_full.slice, w), C.field));
}

TEST_CASE("right-side series annihilator rows re-verify by direct multiplication") {
  const Presentation& C = cedo2();
  Endomorphism id = Endomorphism::make_identity();
  const int t = 4, n = 2;
  std::vector<TruncSeries> X;
  for (int i = 0; i <= n; ++i) {
    TruncSeries f = TruncSeries::zero(t);
    f.coeffs[0] = E(C, "a[0," + std::to_string(i) + "]");
    f.coeffs[1] = negate(C.field, E(C, "a[1," + std::to_string(i) + "]"));
    X.push_back(std::move(f));
  }
  AnnQuery q;
  q.side = Side::right;
  q.elems = X;
  q.bounds = Bounds{n, 1};
  q.order = t;
  SubspaceBasis B = annihilator(q, C);
  for (const SparseVec& row : B.rows) {
    TruncSeries v = vec_to_series(B.slice, row);
    for (const TruncSeries& f : X)
      CHECK(skew_mul_series(f, v, id, C, kWide).is_zero());
  }

  // independent assembly: one constraint system per candidate monomial
  Slice s = make_series_slice(C, Bounds{n, 1}, t);
  std::map<std::tuple<int, int, Word>, SparseVec> constraints;
  for (std::int32_t a = 0; a < s.dim(); ++a) {
    TruncSeries cand = TruncSeries::zero(t);
    cand.coeffs[static_cast<std::size_t>(s.axis_xpow(a))] =
        term_elem(s.words[static_cast<std::size_t>(s.axis_word(a))]);
    for (int xi = 0; xi < static_cast<int>(X.size()); ++xi) {
      TruncSeries prod = skew_mul_series(X[static_cast<std::size_t>(xi)], cand, id, C, kWide);
      for (int k = 0; k <= t; ++k)
        for (const auto& [w, c] : prod.coeffs[static_cast<std::size_t>(k)].terms)
          constraints[{xi, k, w}].e.emplace_back(a, c);
    }
  }
  std::vector<SparseVec> rows;
  for (auto& [key, v] : constraints) rows.push_back(std::move(v));
  CHECK(solve_kernel(C.field, rows, s.dim()) == B.rows);
}

TEST_CASE("armendariz check on polynomial pairs") {
  const Presentation& A = armendariz();
  Endomorphism id = Endomorphism::make_identity();
  Bounds b{3, 2};

  SkewPoly f = poly_from_coeffs({E(A, "a[0]")});
  SkewPoly g = poly_from_coeffs({E(A, "b[0]")});
  CHECK(!armendariz_check(f, g, id, A, b).has_value());

  SkewPoly f2 = poly_from_coeffs({E(A, "a[0]"), E(A, "a[0]")});
  CHECK(!armendariz_check(f2, g, id, A, b).has_value());

  const Presentation& S = section4();
  SkewPoly fb = poly_from_coeffs({E(S, "b[0]")});
  SkewPoly ga = poly_from_coeffs({E(S, "a[1]")});
  CHECK_THROWS_AS(armendariz_check(fb, ga, id, S, b), NcannError);
  try {
    armendariz_check(fb, ga, id, S, b);
  } catch (const NcannError& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
}

TEST_CASE("strong armendariz check pins the (1,0) violation") {
  const Presentation& A = armendariz();
  Endomorphism id = Endomorphism::make_identity();
  const int t = 8;
  Bounds b{t, 2};
  TruncSeries f = TruncSeries::zero(t), g = TruncSeries::zero(t);
  for (int i = 0; i <= t; ++i) {
    f.coeffs[static_cast<std::size_t>(i)] = E(A, "a[" + std::to_string(i) + "]");
    g.coeffs[static_cast<std::size_t>(i)] = E(A, "b[" + std::to_string(i) + "]");
  }
  auto v = strong_armendariz_check(f, g, id, A, b);
  REQUIRE(v.has_value());
  CHECK(*v == std::make_pair(1, 0));
  // the violating product re-verifies: a_1 b_0 = a_0 b_1 != 0
  RingElem val = multiply(E(A, "a[1]"), E(A, "b[0]"), A, kWide);
  CHECK(elem_str(A, val) == "a[0]*b[1]");

  TruncSeries c = TruncSeries::zero(4);
  c.coeffs[0] = E(A, "a[0]");
  TruncSeries d = TruncSeries::zero(4);
  d.coeffs[0] = E(A, "b[0]");
  CHECK(!strong_armendariz_check(c, d, id, A, Bounds{4, 2}).has_value());
  CHECK(!strong_armendariz_check(TruncSeries::zero(4), d, id, A, Bounds{4, 2}).has_value());
}

TEST_CASE("alpha compatibility: identity passes, the shift map fails at (b0,a0)") {
  const Presentation& P = section4();
  Endomorphism id = Endomorphism::make_identity();
  CheckReport rep = alpha_compatibility_check(id, P, Bounds{2, 2});
  CHECK(rep.verdict == CheckReport::Verdict::evidence);

  Endomorphism sigma = shift_endomorphism(P, 6);
  CheckReport rep2 = alpha_compatibility_check(sigma, P, Bounds{2, 2});
  REQUIRE(rep2.verdict == CheckReport::Verdict::fail);
  CHECK(rep2.detail["witness"] == nlohmann::json({"b[0]", "a[0]"}));
  // the witness re-verifies constructively
  CHECK(multiply(E(P, "b[0]"), E(P, "a[0]"), P, kWide).is_zero());
  CHECK(!multiply(E(P, "b[0]"), apply_endomorphism(sigma, E(P, "a[0]"), 1, P, kWide), P,
                  kWide)
             .is_zero());

  const Presentation& C = cedo2();
  CHECK(alpha_compatibility_check(id, C, Bounds{1, 2}).verdict ==
        CheckReport::Verdict::evidence);
}
