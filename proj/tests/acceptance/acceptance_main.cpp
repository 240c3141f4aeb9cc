// Acceptance suite: one line per criterion, exact arithmetic throughout.
// Exit code is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "ncann/algebra.hpp"
#include "ncann/expr.hpp"
#include "ncann/io.hpp"
#include "ncann/paper_rings.hpp"

using namespace ncann;

namespace {

const Bounds kWide{1 << 20, 1 << 20};

struct Criterion {
  int id;
  std::string desc;
  double limit_seconds;
  std::function<bool(std::ostream&)> run;
};

RingElem E(const Presentation& P, const std::string& text) {
  return parse_elem(text, P, Bounds{1 << 20, 1 << 20});
}

// ---------------------------------------------------------------- criterion 1
bool c1_cedo_witness(std::ostream& log) {
  for (int p : {2, 3}) {
    Presentation C = builtin_ring("cedo_3_1", p);
    for (int n = 0; n <= 4; ++n) {
      CheckReport rep = cedo_series_witness(n, C, 4);
      if (rep.verdict != CheckReport::Verdict::pass) {
        log << "witness failed at p=" << p << " n=" << n;
        return false;
      }
    }
  }
  log << "n<=4, i<=n, order 4, GF(2) and GF(3)";
  return true;
}

// ---------------------------------------------------------------- criterion 2
bool c2_zero_series_and_strong_violation(std::ostream& log) {
  Presentation A = builtin_ring("armendariz_3_3", 2);
  const int t = 16;
  Bounds b{t, 2};
  Endomorphism id = Endomorphism::make_identity();
  TruncSeries f = TruncSeries::zero(t), g = TruncSeries::zero(t);
  for (int i = 0; i <= t; ++i) {
    f.coeffs[static_cast<std::size_t>(i)] = gen_elem(A, "a", {i});
    g.coeffs[static_cast<std::size_t>(i)] = gen_elem(A, "b", {i});
  }
  if (!skew_mul_series(f, g, id, A, b).is_zero()) {
    log << "product not zero mod x^17";
    return false;
  }
  auto v = strong_armendariz_check(f, g, id, A, b);
  if (!v || *v != std::make_pair(1, 0)) {
    log << "expected violation (1,0)";
    return false;
  }
  RingElem a1b0 = multiply(E(A, "a[1]"), E(A, "b[0]"), A, kWide);
  RingElem a0b1 = E(A, "a[0]*b[1]");
  if (a1b0.is_zero() || !(a1b0 == a0b1)) {
    log << "witness value mismatch";
    return false;
  }
  log << "f'g' = 0 mod x^17, violation (1,0), a[1]*b[0] = a[0]*b[1] != 0";
  return true;
}

// ---------------------------------------------------------------- criterion 3
bool c3_armendariz_exhaustive(std::ostream& log) {
  Presentation A = builtin_ring("armendariz_3_3", 2);
  PairScanParams prm{2, 2, Bounds{3, 2}};
  PairScanOutcome res = zero_pair_scan(A, prm);
  if (res.armendariz_violation) {
    log << "unexpected coefficient-condition violation";
    return false;
  }
  if (res.scalar_violation) {
    log << "unexpected scalar-component violation";
    return false;
  }
  if (res.zero_product_pairs == 0) {
    log << "scan found no zero-product pairs (vacuous)";
    return false;
  }
  log << res.pairs_checked << " pairs, " << res.zero_product_pairs
      << " zero products, 0 violations";
  return true;
}

// ---------------------------------------------------------------- criterion 4
bool c4_annihilators_with_oracle(std::ostream& log) {
  Presentation S = builtin_ring("section4", 2);

  auto word_oracle = [&](const std::vector<RingElem>& X, Side side, const Bounds& b) {
    Slice s = make_ring_slice(S, b);
    std::vector<SparseVec> rows;
    for (std::int32_t wi = 0; wi < s.word_count(); ++wi) {
      bool kills = true;
      for (const RingElem& x : X) {
        RingElem cand = term_elem(s.words[static_cast<std::size_t>(wi)]);
        RingElem prod = side == Side::left ? multiply(cand, x, S, kWide)
                                           : multiply(x, cand, S, kWide);
        kills = kills && prod.is_zero();
      }
      if (kills) rows.push_back(SparseVec{{{wi, Coeff{1}}}});
    }
    return reduced_span(S.field, rows);
  };

  {
    AnnQuery q;
    q.side = Side::left;
    q.elems = std::vector<RingElem>{E(S, "a[0]"), E(S, "a[1]")};
    q.bounds = Bounds{3, 2};
    SubspaceBasis B = annihilator(q, S);
    if (B.dim() != 3) {
      log << "left dim " << B.dim() << " != 3";
      return false;
    }
    std::vector<std::string> expect{"b[1]", "b[2]", "b[3]"};
    for (int i = 0; i < 3; ++i)
      if (elem_str(S, vec_to_elem(B.slice, B.rows[static_cast<std::size_t>(i)])) !=
          expect[static_cast<std::size_t>(i)]) {
        log << "left basis mismatch";
        return false;
      }
    if (!(B.rows == word_oracle(std::get<std::vector<RingElem>>(q.elems), Side::left,
                                q.bounds))) {
      log << "left oracle mismatch";
      return false;
    }
  }
  {
    AnnQuery q;
    q.side = Side::right;
    q.elems = std::vector<RingElem>{E(S, "b[0]")};
    q.bounds = Bounds{2, 2};
    SubspaceBasis B = annihilator(q, S);
    if (B.dim() != 10) {
      log << "right dim " << B.dim() << " != 10";
      return false;
    }
    if (!(B.rows == word_oracle(std::get<std::vector<RingElem>>(q.elems), Side::right,
                                q.bounds))) {
      log << "right oracle mismatch";
      return false;
    }
  }
  log << "left {a0,a1} = span{b1,b2,b3}; right {b0} dim 10; oracle-exact";
  return true;
}

// ---------------------------------------------------------------- criterion 5
bool c5_bb_witness_batch(std::ostream& log) {
  Presentation S = builtin_ring("section4", 2);
  Bounds b{5, 4};
  Slice s = make_ring_slice(S, b);
  std::vector<Word> ideal_words;
  for (const Word& w : s.words) {
    int cls = S.scheme->classify(w);
    if (cls == 1 || cls == 3) ideal_words.push_back(w);
  }
  std::mt19937_64 rng(20240811);
  for (int run = 0; run < 100; ++run) {
    std::vector<RingElem> F;
    int members = 1 + static_cast<int>(rng() % 4);
    for (int m = 0; m < members; ++m) {
      RingElem r;
      do {
        r = random_elem(ideal_words, S.field, rng, 4);
      } while (r.is_zero());
      F.push_back(std::move(r));
    }
    RingElem w = bb_failure_witness(F, S, b);
    for (const RingElem& r : F)
      if (!multiply(w, r, S, kWide).is_zero()) {
        log << "witness failed at run " << run;
        return false;
      }
  }
  log << "100 seeded subsets, every b_k annihilates exactly";
  return true;
}

// ---------------------------------------------------------------- criterion 6
bool c6_right_zip_batch(std::ostream& log) {
  Presentation S = builtin_ring("section4", 2);
  Bounds b{4, 3};
  Slice s = make_ring_slice(S, b);
  std::mt19937_64 rng(20240812);
  for (int run = 0; run < 100; ++run) {
    std::vector<RingElem> X;
    int members = 1 + static_cast<int>(rng() % 3);
    for (int m = 0; m < members; ++m) X.push_back(random_elem(s.words, S.field, rng, 3));
    if (!X[0].terms.contains(Word{})) accumulate(X[0], S.field, Word{}, 1);
    CheckReport rep = right_zip_certificate(X, S, b);
    if (rep.verdict != CheckReport::Verdict::pass) {
      log << "certificate failed at run " << run;
      return false;
    }
  }
  log << "100 seeded sets, singleton witness with zero annihilators both sides";
  return true;
}

// ---------------------------------------------------------------- criterion 7
bool c7_psi_phi_identity(std::ostream& log) {
  Endomorphism id = Endomorphism::make_identity();
  std::vector<Presentation> rings;
  rings.push_back(builtin_ring("section4", 2));
  rings.push_back(builtin_ring("armendariz_3_3", 2));
  rings.push_back(builtin_ring("cedo_3_1", 2));
  std::mt19937_64 rng(20240813);
  int checked = 0;
  for (const Presentation& P : rings) {
    Bounds b{2, 2};
    Slice s = make_ring_slice(P, b);
    for (int i = 0; i < 17 && checked < 50; ++i) {
      std::vector<RingElem> X{random_elem(s.words, P.field, rng, 2),
                              random_elem(s.words, P.field, rng, 2)};
      AnnQuery q;
      q.side = Side::left;
      q.elems = X;
      q.bounds = b;
      SubspaceBasis L = annihilator(q, P);
      SubspaceBasis Phi = phi_extend(L, P, b, 2, id);
      SubspaceBasis back = psi_restrict(Phi, P, b);
      if (!back.same_subspace(L)) {
        log << "psi(phi(L)) != L on " << P.name;
        return false;
      }
      ++checked;
    }
  }
  log << checked << " annihilator subspaces across three rings, exact";
  return checked == 50;
}

// ---------------------------------------------------------------- criterion 8
bool c8_alpha_compatibility(std::ostream& log) {
  Presentation S = builtin_ring("section4", 2);
  Endomorphism id = Endomorphism::make_identity();
  if (alpha_compatibility_check(id, S, Bounds{2, 2}).verdict ==
      CheckReport::Verdict::fail) {
    log << "identity unexpectedly incompatible";
    return false;
  }
  Endomorphism sigma = shift_endomorphism(S, 6);
  CheckReport rep = alpha_compatibility_check(sigma, S, Bounds{2, 2});
  if (rep.verdict != CheckReport::Verdict::fail ||
      rep.detail["witness"] != nlohmann::json({"b[0]", "a[0]"})) {
    log << "expected shift failure with witness (b[0], a[0])";
    return false;
  }
  log << "identity passes; shift fails with witness (b[0], a[0])";
  return true;
}

// ---------------------------------------------------------------- criterion 9
bool c9_algebraic_law_fuzz(std::ostream& log) {
  std::vector<Presentation> rings;
  rings.push_back(builtin_ring("section4", 2));
  rings.push_back(builtin_ring("armendariz_3_3", 2));
  rings.push_back(builtin_ring("cedo_3_1", 2));
  std::mt19937_64 rng(20240814);
  for (const Presentation& P : rings) {
    Slice s = make_ring_slice(P, Bounds{2, 1});
    NfCache cache;
    for (int i = 0; i < 10000; ++i) {
      RingElem x = random_elem(s.words, P.field, rng, 3);
      RingElem y = random_elem(s.words, P.field, rng, 3);
      RingElem z = random_elem(s.words, P.field, rng, 3);
      RingElem xy = multiply_cached(x, y, P, kWide, cache);
      RingElem yz = multiply_cached(y, z, P, kWide, cache);
      if (!(multiply_cached(xy, z, P, kWide, cache) ==
            multiply_cached(x, yz, P, kWide, cache))) {
        log << "associativity failed on " << P.name;
        return false;
      }
      if (!(multiply_cached(x, add(P.field, y, z), P, kWide, cache) ==
            add(P.field, xy, multiply_cached(x, z, P, kWide, cache)))) {
        log << "distributivity failed on " << P.name;
        return false;
      }
    }
  }

  // identity-twist products agree with plain convolution
  Presentation S = builtin_ring("section4", 2);
  Endomorphism id = Endomorphism::make_identity();
  Slice s = make_ring_slice(S, Bounds{2, 1});
  for (int i = 0; i < 1000; ++i) {
    SkewPoly f, g;
    for (int k = 0; k < 3; ++k) {
      f.coeffs.push_back(random_elem(s.words, S.field, rng, 2));
      g.coeffs.push_back(random_elem(s.words, S.field, rng, 2));
    }
    f.trim();
    g.trim();
    SkewPoly skew = skew_mul_poly(f, g, id, S, kWide);
    SkewPoly conv;
    conv.coeffs.assign(f.coeffs.size() + g.coeffs.size(), RingElem{});
    for (std::size_t a = 0; a < f.coeffs.size(); ++a)
      for (std::size_t c = 0; c < g.coeffs.size(); ++c)
        conv.coeffs[a + c] =
            add(S.field, conv.coeffs[a + c], multiply(f.coeffs[a], g.coeffs[c], S, kWide));
    conv.trim();
    if (!(skew == conv)) {
      log << "convolution oracle mismatch";
      return false;
    }
  }
  log << "3 rings x 10^4 triples exact; 10^3 convolution pairs exact";
  return true;
}

// --------------------------------------------------------------- criterion 10
bool c10_basis_claims(std::ostream& log) {
  Presentation S = builtin_ring("section4", 2);
  Presentation A = builtin_ring("armendariz_3_3", 2);
  Presentation C = builtin_ring("cedo_3_1", 2);
  for (const Presentation* P : {&S, &A, &C})
    if (check_basis_claim(*P, Bounds{3, 3}).verdict != CheckReport::Verdict::pass) {
      log << "basis claim failed for " << P->name;
      return false;
    }
  if (enumerate_basis(S, Bounds{2, 2}).size() != 19) {
    log << "section4 count != 19";
    return false;
  }
  if (enumerate_basis(A, Bounds{2, 4}).size() != 13) {
    log << "armendariz count != 13";
    return false;
  }
  log << "three claims pass at N=3,d=3; counts 19 and 13 confirmed";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "cedo annihilating series witness", 1.0, c1_cedo_witness},
      {2, "zero series product and strong-condition violation (1,0)", 5.0,
       c2_zero_series_and_strong_violation},
      {3, "exhaustive polynomial pair scan, no violations", 120.0,
       c3_armendariz_exhaustive},
      {4, "section4 annihilators match the per-word oracle", 10.0,
       c4_annihilators_with_oracle},
      {5, "seeded ideal subsets all annihilated by a b_k", 10.0, c5_bb_witness_batch},
      {6, "seeded right-zip certificates with singleton witnesses", 30.0,
       c6_right_zip_batch},
      {7, "psi after phi is the identity on 50 subspaces", 30.0, c7_psi_phi_identity},
      {8, "compatibility: identity passes, shift fails at (b0,a0)", 1.0,
       c8_alpha_compatibility},
      {9, "associativity/distributivity fuzz and convolution oracle", 60.0,
       c9_algebraic_law_fuzz},
      {10, "claimed bases match enumerated normal words", 30.0, c10_basis_claims},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::ostringstream log;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    if (secs > c.limit_seconds) {
      ok = false;
      log << " [over time budget " << c.limit_seconds << "s]";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << c.id << " ("
              << std::fixed << std::setprecision(2) << secs << "s): " << c.desc;
    if (!log.str().empty()) std::cout << " -- " << log.str();
    std::cout << "\n";
    failures += !ok;
  }
  if (failures == 0)
    std::cout << "acceptance: all 10 criteria passed\n";
  else
    std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return failures;
}
