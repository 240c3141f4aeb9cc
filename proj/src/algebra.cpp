#include "ncann/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "ncann/io.hpp"

namespace ncann {

namespace {

void append_index_tuples(const Presentation& P, int family, const Bounds& b,
                         std::vector<GeneratorId>& out) {
  const FamilyDecl& fam = P.family(family);
  std::vector<std::int32_t> idx(static_cast<std::size_t>(fam.arity), 0);
  // Odometer over the index positions, least significant last, so the
  // resulting tuples come out in lexicographic order.
  auto lo = [&](int pos) { return fam.ranges[static_cast<std::size_t>(pos)].fixed
                                      ? fam.ranges[static_cast<std::size_t>(pos)].lo
                                      : 0; };
  auto hi = [&](int pos) { return fam.ranges[static_cast<std::size_t>(pos)].fixed
                                      ? fam.ranges[static_cast<std::size_t>(pos)].hi
                                      : b.max_index; };
  if (fam.arity == 0) {
    out.push_back(GeneratorId{family, {}});
    return;
  }
  for (int p = 0; p < fam.arity; ++p) {
    if (lo(p) > hi(p)) return;  // empty range at these bounds
    idx[static_cast<std::size_t>(p)] = lo(p);
  }
  while (true) {
    out.push_back(GeneratorId{family, idx});
    int p = fam.arity - 1;
    while (p >= 0) {
      if (idx[static_cast<std::size_t>(p)] < hi(p)) {
        ++idx[static_cast<std::size_t>(p)];
        for (int q = p + 1; q < fam.arity; ++q) idx[static_cast<std::size_t>(q)] = lo(q);
        break;
      }
      --p;
    }
    if (p < 0) break;
  }
}

bool match_rule_at(const RewriteRule& rule, const Word& w, std::size_t pos,
                   std::vector<std::int32_t>& binding) {
  const std::size_t len = rule.lhs.size();
  if (pos + len > w.letters.size()) return false;
  binding.assign(static_cast<std::size_t>(rule.num_vars), -1);
  for (std::size_t k = 0; k < len; ++k) {
    const GeneratorId& g = w.letters[pos + k];
    const LetterPattern& pat = rule.lhs[k];
    if (g.family != pat.family) return false;
    for (std::size_t a = 0; a < pat.args.size(); ++a) {
      const PatternArg& arg = pat.args[a];
      std::int32_t v = g.indices[a];
      if (arg.is_var) {
        std::int32_t& slot = binding[static_cast<std::size_t>(arg.value)];
        if (slot < 0)
          slot = v;
        else if (slot != v)
          return false;
      } else if (arg.value != v) {
        return false;
      }
    }
  }
  for (const GuardCmp& g : rule.guards)
    if (!g.holds(binding)) return false;
  return true;
}

struct Match {
  std::size_t pos = 0;
  int rule = -1;
  std::vector<std::int32_t> binding;
};

bool find_first_match(const Word& w, const Presentation& P, Match& m) {
  std::vector<std::int32_t> binding;
  for (std::size_t pos = 0; pos < w.letters.size(); ++pos) {
    for (std::size_t r = 0; r < P.rules.size(); ++r) {
      if (match_rule_at(P.rules[r], w, pos, binding)) {
        m.pos = pos;
        m.rule = static_cast<int>(r);
        m.binding = binding;
        return true;
      }
    }
  }
  return false;
}

GeneratorId instantiate_letter(const RhsLetter& l, const Presentation& P,
                               std::span<const std::int32_t> binding,
                               const std::string& rule_text) {
  GeneratorId g;
  g.family = l.family;
  g.indices.reserve(l.indices.size());
  for (const AffineExpr& e : l.indices) {
    long long v = e.eval(binding);
    if (v < 0)
      fail(ErrorKind::bad_index, "rule '" + rule_text +
                                     "' produced a negative generator index");
    g.indices.push_back(static_cast<std::int32_t>(v));
  }
  check_generator(g, P);
  return g;
}

/// Expands a rule's right-hand side at a concrete binding into raw
/// (coefficient, word) terms; words may themselves be reducible.
void instantiate_rhs(const RewriteRule& rule, const Presentation& P,
                     std::vector<std::int32_t>& binding,
                     std::vector<std::pair<Coeff, Word>>& out) {
  for (const RhsTerm& t : rule.rhs) {
    if (t.is_sum) {
      long long lo = t.sum_lo.eval(binding), hi = t.sum_hi.eval(binding);
      for (long long k = lo; k <= hi; ++k) {
        binding[static_cast<std::size_t>(t.sum_var)] = static_cast<std::int32_t>(k);
        Word w;
        w.letters.reserve(t.word.size());
        for (const RhsLetter& l : t.word)
          w.letters.push_back(instantiate_letter(l, P, binding, rule.text));
        out.emplace_back(t.coeff, std::move(w));
      }
      binding[static_cast<std::size_t>(t.sum_var)] = -1;
    } else {
      Word w;
      w.letters.reserve(t.word.size());
      for (const RhsLetter& l : t.word)
        w.letters.push_back(instantiate_letter(l, P, binding, rule.text));
      out.emplace_back(t.coeff, std::move(w));
    }
  }
}

constexpr int kMaxReductionDepth = 4096;

const RingElem& reduce_word_impl(const Word& w, const Presentation& P, NfCache& cache,
                                 int depth) {
  if (auto it = cache.find(w); it != cache.end()) return it->second;
  if (depth > kMaxReductionDepth)
    fail(ErrorKind::internal,
         "reduction exceeded depth limit; the rule set may be non-terminating");
  Match m;
  RingElem result;
  if (!find_first_match(w, P, m)) {
    result = term_elem(w);
  } else {
    const RewriteRule& rule = P.rules[static_cast<std::size_t>(m.rule)];
    std::vector<std::pair<Coeff, Word>> terms;
    instantiate_rhs(rule, P, m.binding, terms);
    const std::size_t len = rule.lhs.size();
    for (auto& [c, mid] : terms) {
      Word spliced;
      spliced.letters.reserve(w.letters.size() - len + mid.letters.size());
      spliced.letters.insert(spliced.letters.end(), w.letters.begin(),
                             w.letters.begin() + static_cast<std::ptrdiff_t>(m.pos));
      spliced.letters.insert(spliced.letters.end(), mid.letters.begin(), mid.letters.end());
      spliced.letters.insert(spliced.letters.end(),
                             w.letters.begin() + static_cast<std::ptrdiff_t>(m.pos + len),
                             w.letters.end());
      const RingElem& sub = reduce_word_impl(spliced, P, cache, depth + 1);
      for (const auto& [sw, sc] : sub.terms)
        accumulate(result, P.field, sw, P.field.mul(sc, c));
    }
  }
  auto [it, inserted] = cache.emplace(w, std::move(result));
  return it->second;
}

}  // namespace

std::vector<GeneratorId> generators_in_bounds(const Presentation& P, const Bounds& b) {
  std::vector<GeneratorId> out;
  for (std::size_t f = 0; f < P.families.size(); ++f)
    append_index_tuples(P, static_cast<int>(f), b, out);
  std::sort(out.begin(), out.end());
  return out;
}

void check_generator(const GeneratorId& g, const Presentation& P) {
  if (g.family < 0 || g.family >= static_cast<int>(P.families.size()))
    fail(ErrorKind::unknown_family, "unknown generator family id");
  const FamilyDecl& fam = P.family(g.family);
  if (static_cast<int>(g.indices.size()) != fam.arity)
    fail(ErrorKind::bad_index, "generator '" + fam.name + "' expects " +
                                   std::to_string(fam.arity) + " indices");
  for (int a = 0; a < fam.arity; ++a) {
    std::int32_t v = g.indices[static_cast<std::size_t>(a)];
    const IndexRange& r = fam.ranges[static_cast<std::size_t>(a)];
    if (v < 0) fail(ErrorKind::bad_index, "negative index in family '" + fam.name + "'");
    if (r.fixed && (v < r.lo || v > r.hi))
      fail(ErrorKind::bad_index,
           "index " + std::to_string(v) + " outside declared range " +
               std::to_string(r.lo) + ".." + std::to_string(r.hi) + " of family '" +
               fam.name + "'");
  }
}

void check_word_in_bounds(const Word& w, const Presentation& P, const Bounds& b) {
  if (w.grade() > b.max_degree)
    fail(ErrorKind::degree_overflow,
         "word grade " + std::to_string(w.grade()) + " exceeds max degree " +
             std::to_string(b.max_degree));
  for (const GeneratorId& g : w.letters) {
    check_generator(g, P);
    const FamilyDecl& fam = P.family(g.family);
    for (int a = 0; a < fam.arity; ++a)
      if (!fam.ranges[static_cast<std::size_t>(a)].fixed &&
          g.indices[static_cast<std::size_t>(a)] > b.max_index)
        fail(ErrorKind::index_bounds,
             "index " + std::to_string(g.indices[static_cast<std::size_t>(a)]) +
                 " of family '" + fam.name + "' exceeds max index " +
                 std::to_string(b.max_index));
  }
}

bool word_irreducible(const Word& w, const Presentation& P) {
  Match m;
  return !find_first_match(w, P, m);
}

const RingElem& reduce_word(const Word& w, const Presentation& P, NfCache& cache) {
  return reduce_word_impl(w, P, cache, 0);
}

RingElem normal_form_cached(const RingElem& raw, const Presentation& P, const Bounds& b,
                            NfCache& cache) {
  RingElem out;
  for (const auto& [w, c] : raw.terms) {
    check_word_in_bounds(w, P, b);
    const RingElem& nf = reduce_word(w, P, cache);
    for (const auto& [nw, nc] : nf.terms) accumulate(out, P.field, nw, P.field.mul(nc, c));
  }
  return out;
}

RingElem normal_form(const RingElem& raw, const Presentation& P, const Bounds& b) {
  NfCache cache;
  return normal_form_cached(raw, P, b, cache);
}

RingElem multiply_cached(const RingElem& a, const RingElem& b, const Presentation& P,
                         const Bounds& bounds, NfCache& cache) {
  RingElem out;
  if (a.is_zero() || b.is_zero()) return out;
  if (a.max_grade() + b.max_grade() > bounds.max_degree)
    fail(ErrorKind::degree_overflow,
         "product grade " + std::to_string(a.max_grade() + b.max_grade()) +
             " exceeds max degree " + std::to_string(bounds.max_degree));
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      const RingElem& nf = reduce_word(concat(wa, wb), P, cache);
      Coeff c = P.field.mul(ca, cb);
      for (const auto& [nw, nc] : nf.terms) accumulate(out, P.field, nw, P.field.mul(nc, c));
    }
  return out;
}

RingElem multiply(const RingElem& a, const RingElem& b, const Presentation& P,
                  const Bounds& bounds) {
  NfCache cache;
  return multiply_cached(a, b, P, bounds, cache);
}

std::size_t max_slice_dim() {
  if (const char* s = std::getenv("NCANN_MAX_SLICE")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

namespace {

std::vector<Word> enumerate_words(const Presentation& P, const Bounds& b,
                                  bool only_irreducible) {
  const std::size_t cap = only_irreducible ? max_slice_dim() : max_slice_dim() * 64;
  std::vector<GeneratorId> gens = generators_in_bounds(P, b);
  std::vector<Word> out{Word{}};
  std::vector<Word> level{Word{}};
  std::vector<std::int32_t> binding;
  for (int g = 1; g <= b.max_degree; ++g) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (const GeneratorId& gen : gens) {
        Word cand = w;
        cand.letters.push_back(gen);
        if (only_irreducible) {
          // The prefix is already irreducible, so any new redex must touch
          // the appended letter.
          bool reducible = false;
          for (std::size_t r = 0; r < P.rules.size() && !reducible; ++r) {
            const std::size_t len = P.rules[r].lhs.size();
            if (len > cand.letters.size()) continue;
            std::size_t pos = cand.letters.size() - len;
            reducible = match_rule_at(P.rules[r], cand, pos, binding);
          }
          if (reducible) continue;
        }
        next.push_back(std::move(cand));
        if (out.size() + next.size() > cap)
          fail(ErrorKind::slice_limit,
               "slice exceeds the maximum dimension (" + std::to_string(cap) + ")");
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
    if (level.empty()) break;
  }
  return out;
}

}  // namespace

std::vector<Word> enumerate_basis(const Presentation& P, const Bounds& b) {
  return enumerate_words(P, b, true);
}

std::vector<Word> enumerate_all_words(const Presentation& P, const Bounds& b) {
  return enumerate_words(P, b, false);
}

RingElem reduce_random_order(const Word& w, const Presentation& P, std::mt19937_64& rng) {
  // Worklist of pending (word, coefficient) contributions; at each step a
  // random redex of a random pending word is rewritten.
  std::vector<std::pair<Word, Coeff>> work{{w, Coeff{1}}};
  RingElem out;
  std::vector<std::int32_t> binding;
  long long steps = 0;
  while (!work.empty()) {
    if (++steps > 2'000'000)
      fail(ErrorKind::internal, "randomized reduction exceeded step limit");
    std::size_t pick = static_cast<std::size_t>(rng() % work.size());
    auto [u, c] = std::move(work[pick]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(pick));
    std::vector<Match> matches;
    for (std::size_t pos = 0; pos < u.letters.size(); ++pos)
      for (std::size_t r = 0; r < P.rules.size(); ++r)
        if (match_rule_at(P.rules[r], u, pos, binding))
          matches.push_back(Match{pos, static_cast<int>(r), binding});
    if (matches.empty()) {
      accumulate(out, P.field, u, c);
      continue;
    }
    Match& m = matches[static_cast<std::size_t>(rng() % matches.size())];
    const RewriteRule& rule = P.rules[static_cast<std::size_t>(m.rule)];
    std::vector<std::pair<Coeff, Word>> terms;
    instantiate_rhs(rule, P, m.binding, terms);
    for (auto& [tc, mid] : terms) {
      Word spliced;
      spliced.letters.insert(spliced.letters.end(), u.letters.begin(),
                             u.letters.begin() + static_cast<std::ptrdiff_t>(m.pos));
      spliced.letters.insert(spliced.letters.end(), mid.letters.begin(), mid.letters.end());
      spliced.letters.insert(
          spliced.letters.end(),
          u.letters.begin() + static_cast<std::ptrdiff_t>(m.pos + rule.lhs.size()),
          u.letters.end());
      work.emplace_back(std::move(spliced), P.field.mul(c, tc));
    }
  }
  return out;
}

CheckReport check_basis_claim(const Presentation& P, const Bounds& b,
                              const BasisClaimOptions& opt) {
  if (!P.claimed_basis)
    fail(ErrorKind::precondition, "presentation has no claimed-basis predicate");
  CheckReport rep;
  rep.claim = "basis_claim";
  rep.detail["bounds"] = {{"max_index", b.max_index}, {"max_degree", b.max_degree}};
  rep.detail["seed"] = opt.seed;

  std::vector<Word> computed = enumerate_basis(P, b);
  std::vector<Word> all = enumerate_all_words(P, b);
  std::vector<Word> claimed;
  for (const Word& w : all)
    if (P.claimed_basis(w)) claimed.push_back(w);

  rep.detail["computed_count"] = computed.size();
  rep.detail["claimed_count"] = claimed.size();

  // First disagreement in canonical order, if any.
  std::size_t i = 0, j = 0;
  std::string mismatch;
  while (i < computed.size() || j < claimed.size()) {
    if (i == computed.size()) {
      mismatch = word_str(P, claimed[j]);
      break;
    }
    if (j == claimed.size()) {
      mismatch = word_str(P, computed[i]);
      break;
    }
    int c = compare(computed[i], claimed[j]);
    if (c != 0) {
      mismatch = word_str(P, c < 0 ? computed[i] : claimed[j]);
      break;
    }
    ++i, ++j;
  }
  if (!mismatch.empty()) {
    rep.verdict = CheckReport::Verdict::fail;
    rep.detail["first_mismatch"] = mismatch;
    return rep;
  }

  // Local-confluence evidence: randomized reduction orders agree with the
  // canonical normal form on sampled words.
  std::mt19937_64 rng(opt.seed);
  NfCache cache;
  int checked = 0;
  for (int s = 0; s < opt.confluence_samples && !all.empty(); ++s) {
    const Word& w = all[static_cast<std::size_t>(rng() % all.size())];
    RingElem canonical = reduce_word(w, P, cache);
    RingElem shuffled = reduce_random_order(w, P, rng);
    ++checked;
    if (!(canonical == shuffled)) {
      rep.verdict = CheckReport::Verdict::fail;
      rep.detail["confluence_counterexample"] = word_str(P, w);
      return rep;
    }
  }
  rep.detail["confluence_samples"] = checked;
  rep.verdict = CheckReport::Verdict::pass;
  return rep;
}

std::map<std::string, RingElem> decompose_components(const RingElem& e,
                                                     const Presentation& P) {
  if (!P.scheme)
    fail(ErrorKind::unsupported_ring,
         "presentation '" + P.name + "' has no component scheme");
  std::map<std::string, RingElem> out;
  for (const std::string& cls : P.scheme->classes) out[cls] = RingElem{};
  for (const auto& [w, c] : e.terms) {
    int cls = P.scheme->classify(w);
    if (cls < 0 || cls >= static_cast<int>(P.scheme->classes.size()))
      fail(ErrorKind::internal, "component classifier returned an unknown class");
    accumulate(out[P.scheme->classes[static_cast<std::size_t>(cls)]], P.field, w, c);
  }
  return out;
}

LengthDelta length_and_delta(const RingElem& e, const Presentation& P) {
  if (P.name != "armendariz_3_3")
    fail(ErrorKind::ring_mismatch, "length/delta is defined for the armendariz_3_3 ring");
  if (e.is_zero()) return LengthDelta{true, 0, Word{}};

  auto word_length = [](const Word& w) -> int {
    if (w.empty()) return -1;
    int l = 0;
    for (const GeneratorId& g : w.letters) l += g.indices.at(0);
    return l;
  };

  // Every support word must belong to one component class.
  int cls = -1;
  for (const auto& [w, c] : e.terms) {
    int k = P.scheme->classify(w);
    if (cls < 0) cls = k;
    if (k != cls)
      fail(ErrorKind::mixed_component, "element spans more than one component class");
  }

  LengthDelta out;
  out.length = -1;
  for (const auto& [w, c] : e.terms) out.length = std::max(out.length, word_length(w));

  // delta: the distinguished support word of maximal length; in the mixed
  // class the tie among i+j = length is broken by the largest j.
  bool have = false;
  for (const auto& [w, c] : e.terms) {
    if (word_length(w) != out.length) continue;
    if (!have) {
      out.delta = w;
      have = true;
      continue;
    }
    if (w.letters.size() == 2 && out.delta.letters.size() == 2 &&
        w.letters[1].indices[0] > out.delta.letters[1].indices[0])
      out.delta = w;
  }
  return out;
}

std::vector<RuleInstance> rule_instances(const Presentation& P, const Bounds& b) {
  std::vector<RuleInstance> out;
  for (std::size_t r = 0; r < P.rules.size(); ++r) {
    const RewriteRule& rule = P.rules[r];
    // Determine, per variable, the admissible value range: intersect the
    // fixed ranges of the label positions where it occurs; open positions
    // contribute 0..max_index.
    std::vector<int> lo(static_cast<std::size_t>(rule.num_vars), 0);
    std::vector<int> hi(static_cast<std::size_t>(rule.num_vars), 1 << 28);
    for (const LetterPattern& pat : rule.lhs) {
      const FamilyDecl& fam = P.family(pat.family);
      for (std::size_t a = 0; a < pat.args.size(); ++a) {
        if (!pat.args[a].is_var) continue;
        const IndexRange& range = fam.ranges[a];
        auto v = static_cast<std::size_t>(pat.args[a].value);
        if (range.fixed) {
          lo[v] = std::max(lo[v], range.lo);
          hi[v] = std::min(hi[v], range.hi);
        } else {
          hi[v] = std::min(hi[v], b.max_index);
        }
      }
    }
    std::vector<std::int32_t> binding(static_cast<std::size_t>(rule.num_vars), 0);
    // Sum variables (bound inside rhs terms) do not take part here; their
    // slots stay 0 and are overwritten during instantiation.
    std::vector<bool> is_lhs_var(static_cast<std::size_t>(rule.num_vars), false);
    for (const LetterPattern& pat : rule.lhs)
      for (const PatternArg& a : pat.args)
        if (a.is_var) is_lhs_var[static_cast<std::size_t>(a.value)] = true;

    std::vector<int> vars;
    for (int v = 0; v < rule.num_vars; ++v)
      if (is_lhs_var[static_cast<std::size_t>(v)]) vars.push_back(v);

    auto emit = [&]() {
      for (const GuardCmp& g : rule.guards)
        if (!g.holds(binding)) return;
      RuleInstance inst;
      inst.rule_index = static_cast<int>(r);
      inst.binding = binding;
      for (const LetterPattern& pat : rule.lhs) {
        GeneratorId g;
        g.family = pat.family;
        for (const PatternArg& a : pat.args)
          g.indices.push_back(a.is_var ? binding[static_cast<std::size_t>(a.value)]
                                       : a.value);
        inst.lhs.letters.push_back(std::move(g));
      }
      std::vector<std::pair<Coeff, Word>> terms;
      instantiate_rhs(rule, P, binding, terms);
      for (auto& [c, w] : terms) accumulate(inst.rhs_raw, P.field, w, c);
      out.push_back(std::move(inst));
    };

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == vars.size()) {
        emit();
        return;
      }
      auto v = static_cast<std::size_t>(vars[k]);
      for (int x = lo[v]; x <= hi[v]; ++x) {
        binding[v] = x;
        rec(k + 1);
      }
    };
    rec(0);
  }
  return out;
}

}  // namespace ncann
