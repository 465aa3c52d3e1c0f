#include "pcc/jobs.hpp"

#include "pcc/catalog.hpp"
#include "pcc/morphic.hpp"
#include "pcc/singularity.hpp"

#include "json.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

namespace pcc {

namespace {

using nlohmann::json;

std::vector<std::vector<std::vector<u32>>> parse_products(const json& j, size_t d) {
  auto sc = j.get<std::vector<std::vector<std::vector<u32>>>>();
  if (sc.size() != d)
    throw std::runtime_error("algebra file: products table must have one row per basis element");
  return sc;
}

void absorb(JobReport& r, const std::vector<std::string>& lines) {
  for (const auto& l : lines) {
    bool pass = l.rfind("pass: ", 0) == 0;
    r.check(pass, l.substr(pass ? 6 : (l.rfind("FAIL: ", 0) == 0 ? 6 : 0)));
  }
}

ArtinianType random_artinian(u32 p, std::mt19937& rng) {
  ArtinianType t;
  t.p = p;
  size_t nf = rng() % 3;
  for (size_t i = 0; i < nf; ++i) t.finite_exponents.push_back(1 + rng() % 3);
  std::sort(t.finite_exponents.begin(), t.finite_exponents.end());
  t.pruefer_count = rng() % 3;
  if (t.finite_exponents.empty() && t.pruefer_count == 0) t.pruefer_count = 1;
  return t;
}

void hom_job(const JobSpec& s, JobReport& r) {
  auto A = resolve_algebra(s.algebra);
  auto M = catalog_module(A, s.src);
  auto N = catalog_module(A, s.tgt);
  if (s.kind == "module") {
    r.value("dim", (long long)module_hom(M, N).dim());
  } else if (s.kind == "k") {
    auto kh = khom(stalk_complex(M, 0), shift_complex(stalk_complex(N, 0), s.shift));
    r.value("dim", (long long)kh.dim());
  } else if (s.kind == "db") {
    r.value("dim", (long long)dbhom_mod(M, N, s.shift).dim());
  } else if (s.kind == "stable") {
    r.value("dim", (long long)stable_hom(M, N).dim());
  } else if (s.kind == "sg") {
    auto h = sg_hom(M, N, s.shift, s.horizon);
    r.value("dim", (long long)h.dim);
    r.value("stabilization index", h.index);
    r.note("certificate", h.certified ? "certified" : h.note);
  } else if (s.kind == "completion") {
    auto X = truncation_sequence(stalk_complex(M, 0));
    auto Y = truncation_sequence(stalk_complex(N, 0));
    if (s.shift != 0) Y = shifted_sequence(Y, s.shift);
    auto F = completion_hom(X, Y);
    r.value("dim", (long long)F.dim());
    r.value("outer index", F.i);
    r.value("inner index", F.j);
  } else {
    throw std::invalid_argument(
        "unknown hom kind '" + s.kind + "'; use module, k, db, stable, sg, or completion");
  }
  r.value("shift", s.shift);
}

void resolve_job(const JobSpec& s, JobReport& r) {
  auto A = resolve_algebra(s.algebra);
  auto M = catalog_module(A, s.src);
  auto R = resolve(M);
  R->ensure(-s.horizon);
  for (int k = 0; k <= s.horizon && k < (int)R->mods.size(); ++k)
    r.value("term dim at degree " + std::to_string(-k), (long long)R->mods[(size_t)k]->dim);
  r.note("terminated", R->done ? "yes" : "not within horizon");
}

void cauchy_job(const JobSpec& s, JobReport& r) {
  auto A = resolve_algebra(s.algebra);
  auto M = catalog_module(A, s.src);
  auto X = truncation_sequence(stalk_complex(M, 0));
  std::vector<ComplexPtr> compacts;
  for (const auto& S : simples(A)) compacts.push_back(stalk_complex(S, 0));
  auto ns = is_cauchy(X, compacts, s.horizon);
  for (size_t i = 0; i < ns.size(); ++i)
    r.value("certified index against simple" + std::to_string(i), ns[i]);
  r.check(true, "componentwise stabilization verified to the horizon");
}

void pgroup_job(const JobSpec& s, JobReport& r) {
  u32 p = resolve_algebra(s.algebra)->p;
  int h = std::max(s.horizon, 10);
  std::mt19937 rng(s.seed);
  if (s.kind == "canonical-pruefer") {
    auto t = classify_colimit(seq_canonical_pruefer(p), h);
    r.value("divisible factors", t.pruefer_count);
    r.value("finite factors", (long long)t.finite_exponents.size());
    r.check(t.pruefer_count == 1 && t.finite_exponents.empty(),
            "colimit is a single divisible factor");
  } else if (s.kind == "constant") {
    std::vector<u32> exps;
    size_t nf = 1 + rng() % 3;
    for (size_t i = 0; i < nf; ++i) exps.push_back(1 + rng() % 3);
    auto g = make_pgroup(p, exps);
    auto t = classify_colimit(seq_constant(g), h);
    r.value("finite factors", (long long)t.finite_exponents.size());
    r.check(t.finite_exponents == g.exponents && t.pruefer_count == 0,
            "constant sequence classifies to its value");
  } else if (s.kind == "socle-ramp") {
    auto a = random_artinian(p, rng);
    auto t = classify_colimit(seq_socle_ramp(a), h);
    r.value("finite factors", (long long)a.finite_exponents.size());
    r.value("divisible factors", a.pruefer_count);
    r.check(artinian_equal(a, t), "socle series classifies back to its colimit");
  } else {
    throw std::invalid_argument("unknown sequence rule '" + s.kind +
                                "'; use canonical-pruefer, constant, or socle-ramp");
  }
}

void verify_job(const JobSpec& s, JobReport& r) {
  std::mt19937 rng(s.seed);
  if (s.kind == "main-theorem") {
    auto A = resolve_algebra(s.algebra);
    std::vector<std::pair<ComplexPtr, ComplexPtr>> pairs;
    for (int i = 0; i < s.sample; ++i)
      pairs.emplace_back(sample_complex(A, rng), sample_complex(A, rng));
    r.value("pairs", s.sample);
    r.value("window low", s.window_lo);
    r.value("window high", s.window_hi);
    absorb(r, verify_main_theorem(A, pairs, s.window_lo, s.window_hi).lines);
  } else if (s.kind == "morphic") {
    auto A = resolve_algebra(s.algebra);
    absorb(r, epivalence_check(A).lines);
    absorb(r, square_zero_check(A).lines);
    absorb(r, shift_periodicity_check(A, -1).lines);
    absorb(r, shift_periodicity_check(A, 0).lines);
    absorb(r, morphic_completion_check(A).lines);
  } else if (s.kind == "phantomless") {
    auto A = resolve_algebra(s.algebra);
    int n = std::max(1, s.sample / 5);
    bool all = true;
    for (int t = 0; t < n; ++t) {
      auto X = truncation_sequence(stalk_complex(sample_module(A, rng), 0));
      auto Y = truncation_sequence(stalk_complex(sample_module(A, rng), 0));
      for (const auto& res : phantomless_check(X, Y, s.window_lo, s.window_hi))
        all = all && res.verdict == MlVerdict::Vanishes;
    }
    r.value("sampled sequence pairs", n);
    r.check(all, "first derived limit vanishes on all sampled hom towers");
    Tower doubling;
    doubling.integral = true;
    doubling.zmat = {{2}};
    r.check(ml_lim1(doubling, s.horizon).verdict == MlVerdict::MlFails,
            "integer doubling tower fails the image-stabilization test");
  } else if (s.kind == "pgroup") {
    u32 p = resolve_algebra(s.algebra)->p;
    int h = std::max(s.horizon, 10);
    bool all = true;
    for (int t = 0; t < s.sample; ++t) {
      auto a = random_artinian(p, rng);
      all = all && artinian_equal(a, classify_colimit(seq_socle_ramp(a), h));
    }
    r.value("sampled colimit types", s.sample);
    r.check(all, "socle-series round trip is the identity");
    auto pr = classify_colimit(seq_canonical_pruefer(p), h);
    r.check(pr.pruefer_count == 1 && pr.finite_exponents.empty(),
            "canonical divisible sequence classifies to one divisible factor");
  } else if (s.kind == "singularity") {
    auto A = resolve_algebra(s.algebra);
    auto k = simples(A)[0];
    bool certified = true;
    for (int n = s.window_lo; n <= s.window_hi; ++n) {
      auto h = sg_hom(k, k, n, s.horizon);
      r.value("dim at shift " + std::to_string(n), (long long)h.dim);
      certified = certified && h.certified;
    }
    r.check(certified, "all graded quotient homs carry a stabilization certificate");
    auto hp = sg_hom(regular_module(A), k, 0, s.horizon);
    r.check(hp.certified && hp.dim == 0, "the free module is trivial in the quotient");
  } else if (s.kind == "pseudo-coherence") {
    auto A = resolve_algebra(s.algebra);
    int n = std::max(1, s.sample / 5);
    bool all = true;
    for (int t = 0; t < n; ++t) {
      auto R = resolve_complex(sample_complex(A, rng));
      for (int i = 0; i <= 4; ++i) all = all && pc_certificate(*R, i);
    }
    r.value("sampled complexes", n);
    r.check(all, "truncated augmentations are isomorphisms above the cut");
    auto D = truncated_poly_algebra(2, 2);
    auto R = resolve(simples(D)[0]);
    R->ensure(-8);
    ResolutionGen bad = *R;
    bad.done = true;
    bad.diffs[1] = Mat(D->p, bad.diffs[1].rows(), bad.diffs[1].cols());
    r.check(!pc_certificate(bad, 4), "corrupted differential is detected");
  } else {
    throw std::invalid_argument(
        "unknown verification '" + s.kind +
        "'; use main-theorem, morphic, phantomless, pgroup, singularity, or pseudo-coherence");
  }
}

}  // namespace

AlgebraPtr load_algebra_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("algebra file parse error: " + std::string(e.what()));
  }
  u32 p = j.at("p").get<u32>();
  std::string name = j.value("name", path);
  auto renamed = [&](AlgebraPtr A) -> AlgebraPtr {
    if (!j.contains("name") || A->name == name) return A;
    auto B = std::make_shared<Algebra>(*A);
    B->name = name;
    return B;
  };
  if (j.contains("truncated"))
    return renamed(truncated_poly_algebra(p, j["truncated"].get<size_t>()));
  if (j.contains("line")) return renamed(path_algebra_line(p, j["line"].get<size_t>()));
  if (j.contains("quiver")) {
    const auto& q = j["quiver"];
    auto arrows = q.at("arrows").get<std::vector<std::pair<size_t, size_t>>>();
    return path_algebra(p, q.at("vertices").get<size_t>(), arrows, name);
  }
  auto labels = j.at("basis").get<std::vector<std::string>>();
  auto sc = parse_products(j.at("products"), labels.size());
  auto unit = j.at("unit").get<std::vector<u32>>();
  return make_algebra(p, labels, sc, unit, name);
}

AlgebraPtr resolve_algebra(const std::string& name_or_path) {
  if (name_or_path.size() > 5 &&
      name_or_path.compare(name_or_path.size() - 5, 5, ".json") == 0)
    return load_algebra_json(name_or_path);
  return catalog_algebra(name_or_path);
}

JobReport run_job(const JobSpec& s) {
  JobReport r;
  r.task = s.task + (s.kind.empty() ? "" : " " + s.kind);
  if (s.task == "algebra-list") {
    for (const auto& name : catalog_names())
      r.value(name + " dim", (long long)catalog_algebra(name)->dim);
  } else if (s.task == "algebra-define") {
    auto A = load_algebra_json(s.file);
    catalog_register(A->name, A);
    r.note("name", A->name);
    r.value("p", A->p);
    r.value("dim", (long long)A->dim);
    r.check(true, "associativity and unit laws");
  } else if (s.task == "hom") {
    hom_job(s, r);
  } else if (s.task == "resolve") {
    resolve_job(s, r);
  } else if (s.task == "cauchy-check") {
    cauchy_job(s, r);
  } else if (s.task == "pgroup-classify") {
    pgroup_job(s, r);
  } else if (s.task == "verify") {
    verify_job(s, r);
  } else {
    throw std::invalid_argument("unknown task '" + s.task + "'");
  }
  return r;
}

}  // namespace pcc
