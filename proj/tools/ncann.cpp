// ncann: workbench CLI for presented algebras over small prime fields.
//
// Subcommands: nf, mul, basis, ann, zip, armendariz, check.
// Every command builds one JSON report; --out writes it to disk and the
// stdout rendering is derived from it. Exit codes: 0 ok, 1 verification
// failure, 2 usage/parse error, 3 bounds overflow.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncann/algebra.hpp"
#include "ncann/dsl.hpp"
#include "ncann/expr.hpp"
#include "ncann/io.hpp"
#include "ncann/paper_rings.hpp"

using namespace ncann;
using nlohmann::json;

namespace {

int exit_code_for(const NcannError& e) {
  switch (e.kind()) {
    case ErrorKind::degree_overflow:
    case ErrorKind::index_bounds:
    case ErrorKind::slice_limit:
      return 3;
    default:
      return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Common {
  std::string ring = "section4";
  int p = 2;
  int max_index = 4;
  int max_degree = 4;
  int order = 4;
  std::uint64_t seed = 12345;
  std::string out_path;
  std::string alpha_path;

  Bounds bounds() const { return Bounds{max_index, max_degree}; }

  Presentation load_ring() const {
    if (is_builtin_name(ring)) return builtin_ring(ring, p);
    return parse_presentation(read_file(ring));
  }

  Endomorphism load_alpha(const Presentation& P) const {
    if (alpha_path.empty()) return Endomorphism::make_identity();
    return parse_endomorphism(read_file(alpha_path), P, max_index + 8);
  }

  json config_json(const std::string& command) const {
    return json{{"command", command}, {"ring", ring},
                {"p", p},             {"max_index", max_index},
                {"max_degree", max_degree}, {"order", order},
                {"seed", seed}};
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--ring", c.ring, "built-in ring name or presentation file");
  cmd->add_option("--p", c.p, "characteristic for built-in rings");
  cmd->add_option("--idx", c.max_index, "max generator index");
  cmd->add_option("--deg", c.max_degree, "max word grade");
  cmd->add_option("--order", c.order, "series truncation order");
  cmd->add_option("--seed", c.seed, "seed for randomized suites");
  cmd->add_option("--out", c.out_path, "write the JSON report to this path");
  cmd->add_option("--alpha", c.alpha_path, "endomorphism description file");
}

void emit(const Common& c, const json& report) {
  if (!c.out_path.empty()) {
    std::ofstream out(c.out_path);
    out << report.dump(2) << "\n";
  }
}

std::string term_with_x(const Presentation& P, const Word& w, Coeff coeff, int xpow) {
  std::string base;
  if (w.empty())
    base = std::to_string(int(coeff));
  else if (coeff == 1)
    base = word_str(P, w);
  else
    base = std::to_string(int(coeff)) + "*" + word_str(P, w);
  if (xpow == 0) return base;
  return base + (xpow == 1 ? "*x" : "*x^" + std::to_string(xpow));
}

json basis_rows_json(const Presentation& P, const SubspaceBasis& B) {
  json rows = json::array();
  for (const SparseVec& row : B.rows) {
    json terms = json::array();
    for (const auto& [axis, coeff] : row.e)
      terms.push_back(term_with_x(
          P, B.slice.words[static_cast<std::size_t>(B.slice.axis_word(axis))], coeff,
          B.slice.axis_xpow(axis)));
    rows.push_back(terms);
  }
  return rows;
}

json slice_json(const SubspaceBasis& B) {
  const char* kind = B.slice.kind == SliceKind::ring
                         ? "ring"
                         : (B.slice.kind == SliceKind::poly ? "poly" : "series");
  json s{{"kind", kind},
         {"max_index", B.slice.bounds.max_index},
         {"max_degree", B.slice.bounds.max_degree},
         {"words", B.slice.word_count()},
         {"dim", B.slice.dim()}};
  if (B.slice.kind == SliceKind::poly) s["x_degree"] = B.slice.x_bound;
  if (B.slice.kind == SliceKind::series) s["order"] = B.slice.x_bound;
  return s;
}

std::vector<std::string> split_elems(const std::string& arg) {
  // Accepts an inline ';'-separated list or the path of a file holding one.
  std::string text = arg;
  {
    std::ifstream probe(arg);
    if (probe.good()) text = read_file(arg);
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  std::vector<std::string> out;
  for (std::string& s : parts) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) continue;
    std::size_t b = s.find_last_not_of(" \t\r\n");
    out.push_back(s.substr(a, b - a + 1));
  }
  if (out.empty()) fail(ErrorKind::parse, "empty element list");
  return out;
}

int run_nf(const Common& c, const std::string& expr) {
  Presentation P = c.load_ring();
  RingElem e = parse_elem(expr, P, c.bounds());
  RingElem n = normal_form(e, P, c.bounds());
  json rep = {{"config", c.config_json("nf")}, {"input", expr}, {"result", elem_str(P, n)}};
  emit(c, rep);
  std::cout << elem_str(P, n) << "\n";
  return 0;
}

int run_mul(const Common& c, const std::string& e1, const std::string& e2) {
  Presentation P = c.load_ring();
  RingElem a = parse_elem(e1, P, c.bounds());
  RingElem b = parse_elem(e2, P, c.bounds());
  RingElem prod = multiply(a, b, P, c.bounds());
  json rep = {{"config", c.config_json("mul")},
              {"lhs", elem_str(P, a)},
              {"rhs", elem_str(P, b)},
              {"result", elem_str(P, prod)}};
  emit(c, rep);
  std::cout << elem_str(P, prod) << "\n";
  return 0;
}

int run_basis(const Common& c, bool claim) {
  Presentation P = c.load_ring();
  std::vector<Word> words = enumerate_basis(P, c.bounds());
  json list = json::array();
  for (const Word& w : words) list.push_back(word_str(P, w));
  json rep = {{"config", c.config_json("basis")},
              {"count", words.size()},
              {"words", list}};
  int code = 0;
  if (claim) {
    CheckReport r = check_basis_claim(P, c.bounds(), {200, c.seed});
    rep["claim"] = r.to_json();
    code = r.ok() ? 0 : 1;
  }
  emit(c, rep);
  std::cout << "count: " << words.size() << "\n";
  for (const Word& w : words) std::cout << word_str(P, w) << "\n";
  if (claim) std::cout << "claim: " << rep["claim"]["verdict"].get<std::string>() << "\n";
  return code;
}

AnnQuery build_query(const Common& c, const Presentation& P, const Endomorphism& alpha,
                     const std::string& side, const std::string& elems, bool series,
                     int x_degree) {
  AnnQuery q;
  if (side == "left")
    q.side = Side::left;
  else if (side == "right")
    q.side = Side::right;
  else
    fail(ErrorKind::parse, "--side must be left or right");
  q.bounds = c.bounds();
  q.alpha = &alpha;
  std::vector<SkewPoly> polys;
  int max_deg = 0;
  for (const std::string& s : split_elems(elems)) {
    polys.push_back(parse_poly(s, P, Bounds{c.max_index, 1 << 20}, alpha));
    max_deg = std::max(max_deg, polys.back().degree());
  }
  if (series) {
    q.order = c.order;
    std::vector<TruncSeries> sx;
    for (const SkewPoly& f : polys) sx.push_back(truncate(f, c.order));
    q.elems = std::move(sx);
  } else if (max_deg > 0 || x_degree > 0) {
    q.x_degree = std::max(x_degree, max_deg);
    q.elems = std::move(polys);
  } else {
    std::vector<RingElem> rx;
    for (const SkewPoly& f : polys) rx.push_back(f.is_zero() ? RingElem{} : f.coeffs[0]);
    q.elems = std::move(rx);
  }
  return q;
}

int run_ann(const Common& c, const std::string& side, const std::string& elems,
            bool series, int x_degree) {
  Presentation P = c.load_ring();
  Endomorphism alpha = c.load_alpha(P);
  AnnQuery q = build_query(c, P, alpha, side, elems, series, x_degree);
  SubspaceBasis B = annihilator(q, P);
  json rep = {{"config", c.config_json("ann")},
              {"side", side},
              {"slice", slice_json(B)},
              {"dim", B.dim()},
              {"basis", basis_rows_json(P, B)},
              {"evidence_only", B.slice.kind == SliceKind::series}};
  emit(c, rep);
  std::cout << "dim: " << B.dim() << "\n";
  for (const json& row : rep["basis"]) {
    std::cout << " ";
    for (const json& t : row) std::cout << " " << t.get<std::string>();
    std::cout << "\n";
  }
  return 0;
}

int run_zip(const Common& c, const std::string& side, const std::string& elems,
            bool series, int x_degree, int budget) {
  Presentation P = c.load_ring();
  Endomorphism alpha = c.load_alpha(P);
  AnnQuery q = build_query(c, P, alpha, side, elems, series, x_degree);
  int n = std::visit([](const auto& v) { return static_cast<int>(v.size()); }, q.elems);
  if (budget <= 0) budget = n;
  ZipSearchResult res = zip_witness_search(q, P, budget);
  json rep = {{"config", c.config_json("zip")},
              {"side", side},
              {"budget", budget},
              {"full_ann_dim", res.ann_full.dim()},
              {"evidence_only", res.ann_full.slice.kind == SliceKind::series}};
  if (res.chosen) {
    json idx = json::array();
    for (std::size_t i : *res.chosen) idx.push_back(i);
    rep["witness_indices"] = idx;
  } else {
    rep["witness_indices"] = nullptr;
  }
  emit(c, rep);
  if (res.chosen) {
    std::cout << "witness subset of size " << res.chosen->size() << ": indices";
    for (std::size_t i : *res.chosen) std::cout << " " << i;
    std::cout << "\n";
  } else {
    std::cout << "none (full-set annihilator dim " << res.ann_full.dim() << ")\n";
  }
  return 0;
}

int run_armendariz(const Common& c, const std::string& fs, const std::string& gs,
                   bool series) {
  Presentation P = c.load_ring();
  Endomorphism alpha = c.load_alpha(P);
  Bounds wide{c.max_index, 1 << 20};
  SkewPoly f = parse_poly(fs, P, wide, alpha);
  SkewPoly g = parse_poly(gs, P, wide, alpha);
  json rep = {{"config", c.config_json("armendariz")},
              {"f", poly_str(P, f)},
              {"g", poly_str(P, g)},
              {"series", series}};
  std::optional<std::pair<int, int>> v;
  Bounds b{c.max_index, std::max(c.max_degree, 4)};
  if (series)
    v = strong_armendariz_check(truncate(f, c.order), truncate(g, c.order), alpha, P, b);
  else
    v = armendariz_check(f, g, alpha, P, b);
  if (v) {
    rep["violation"] = {v->first, v->second};
    std::cout << "violation (" << v->first << "," << v->second << ")\n";
  } else {
    rep["violation"] = nullptr;
    std::cout << "no violation\n";
  }
  rep["evidence_only"] = series;
  emit(c, rep);
  return 0;
}

int run_check(const Common& c, const CLI::App* cmd, const std::string& ring, int batch) {
  if (!is_builtin_name(ring))
    fail(ErrorKind::unsupported_ring, "check requires a built-in ring name");
  Presentation P = builtin_ring(ring, c.p);
  CheckRunOptions opt;
  // Only user-supplied bounds override the per-ring ledger defaults.
  if (cmd->count("--idx")) opt.max_index = c.max_index;
  if (cmd->count("--deg")) opt.max_degree = c.max_degree;
  if (cmd->count("--order")) opt.order = c.order;
  opt.seed = c.seed;
  opt.batch = batch;
  std::vector<CheckReport> reports = run_ring_checks(P, opt);
  json arr = json::array();
  bool all_ok = true;
  for (const CheckReport& r : reports) {
    arr.push_back(r.to_json());
    all_ok = all_ok && r.ok();
    std::cout << (r.verdict == CheckReport::Verdict::pass
                      ? "PASS     "
                      : (r.verdict == CheckReport::Verdict::evidence ? "EVIDENCE "
                                                                     : "FAIL     "))
              << r.claim << "\n";
  }
  json config = {{"command", "check"},
                 {"ring", ring},
                 {"p", c.p},
                 {"max_index", opt.max_index ? json(*opt.max_index) : json()},
                 {"max_degree", opt.max_degree ? json(*opt.max_degree) : json()},
                 {"order", opt.order ? json(*opt.order) : json()},
                 {"seed", c.seed},
                 {"batch", batch}};
  json rep = {{"config", config}, {"reports", arr}};
  emit(c, rep);
  std::cout << (all_ok ? "all checks consistent" : "CHECK FAILURES PRESENT") << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for presented algebras over small prime fields"};
  app.require_subcommand(1);

  Common c;
  std::string expr, expr2, side = "left", elems, check_ring;
  bool series = false, claim = false;
  int x_degree = 0, budget = 0, batch = 25;

  CLI::App* nf = app.add_subcommand("nf", "normal form of an element");
  add_common(nf, c);
  nf->add_option("expr", expr, "element expression")->required();

  CLI::App* mul = app.add_subcommand("mul", "product of two elements");
  add_common(mul, c);
  mul->add_option("lhs", expr, "left factor")->required();
  mul->add_option("rhs", expr2, "right factor")->required();

  CLI::App* basis = app.add_subcommand("basis", "normal words within bounds");
  add_common(basis, c);
  basis->add_flag("--claim", claim, "also run the claimed-basis check");

  CLI::App* ann = app.add_subcommand("ann", "one-sided annihilator of a finite set");
  add_common(ann, c);
  ann->add_option("--side", side, "left or right")->required();
  ann->add_option("--elems", elems, "';'-separated expressions, or a file")->required();
  ann->add_flag("--series", series, "work in the truncated series slice");
  ann->add_option("--xdeg", x_degree, "candidate x-degree bound for poly queries");

  CLI::App* zip = app.add_subcommand("zip", "search a finite subset with zero annihilator");
  add_common(zip, c);
  zip->add_option("--side", side, "left or right")->required();
  zip->add_option("--elems", elems, "';'-separated expressions, or a file")->required();
  zip->add_flag("--series", series, "work in the truncated series slice");
  zip->add_option("--xdeg", x_degree, "candidate x-degree bound for poly queries");
  zip->add_option("--budget", budget, "max subset size (default: whole set)");

  CLI::App* arm = app.add_subcommand("armendariz", "coefficientwise zero-product check");
  add_common(arm, c);
  arm->add_option("f", expr, "left polynomial")->required();
  arm->add_option("g", expr2, "right polynomial")->required();
  arm->add_flag("--series", series, "check truncated series instead of polynomials");

  CLI::App* check = app.add_subcommand("check", "run a built-in ring's claim ledger");
  add_common(check, c);
  check->add_option("ringname", check_ring, "cedo_3_1 | armendariz_3_3 | section4")
      ->required();
  check->add_option("--batch", batch, "size of seeded witness batches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (nf->parsed()) return run_nf(c, expr);
    if (mul->parsed()) return run_mul(c, expr, expr2);
    if (basis->parsed()) return run_basis(c, claim);
    if (ann->parsed()) return run_ann(c, side, elems, series, x_degree);
    if (zip->parsed()) return run_zip(c, side, elems, series, x_degree, budget);
    if (arm->parsed()) return run_armendariz(c, expr, expr2, series);
    if (check->parsed()) return run_check(c, check, check_ring, batch);
  } catch (const NcannError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
