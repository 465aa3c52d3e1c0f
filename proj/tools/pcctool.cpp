// Command-line surface: algebra catalog and definitions, hom and resolution
// computations, Cauchy/completion queries, and the verification suites.
#include "CLI11.hpp"

#include "pcc/jobs.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"desk-scale homological computations over finite-dimensional algebras"};
  app.require_subcommand(1);

  pcc::JobSpec spec;
  spec.task.clear();
  std::string format = "text";
  std::vector<int> window;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--algebra", spec.algebra, "catalog name or JSON definition file");
    c->add_option("--horizon", spec.horizon, "search/stabilization horizon");
    c->add_option("--window", window, "shift window: low high")->expected(2);
    c->add_option("--shift", spec.shift, "degree shift");
    c->add_option("--sample", spec.sample, "sample size for seeded runs");
    c->add_option("--seed", spec.seed, "random seed");
    c->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
  };
  auto leaf = [&](CLI::App* c, const std::string& task, const std::string& kind = "") {
    add_common(c);
    c->callback([&spec, task, kind] {
      spec.task = task;
      if (!kind.empty()) spec.kind = kind;
    });
    return c;
  };

  auto* algebra = app.add_subcommand("algebra", "define or list algebras");
  algebra->require_subcommand(1);
  auto* adef = leaf(algebra->add_subcommand("define", "validate and register a JSON algebra"),
                    "algebra-define");
  adef->add_option("file", spec.file, "JSON definition file")->required();
  leaf(algebra->add_subcommand("list", "list the built-in catalog"), "algebra-list");

  auto* hom = leaf(app.add_subcommand("hom", "hom-space dimensions"), "hom");
  hom->add_option("kind", spec.kind, "module, k, db, stable, sg, or completion")->required();
  hom->add_option("src", spec.src, "source module name");
  hom->add_option("tgt", spec.tgt, "target module name");

  auto* res = leaf(app.add_subcommand("resolve", "minimal projective resolution"), "resolve");
  res->add_option("src", spec.src, "module name");

  auto* cauchy = app.add_subcommand("cauchy", "sequence certificates");
  cauchy->require_subcommand(1);
  auto* cch = leaf(cauchy->add_subcommand("check", "stabilization indices of a truncation sequence"),
                   "cauchy-check");
  cch->add_option("src", spec.src, "module name");

  auto* complete = app.add_subcommand("complete", "completed hom spaces");
  complete->require_subcommand(1);
  auto* chom = leaf(complete->add_subcommand("hom", "hom space between completed sequences"),
                    "hom", "completion");
  chom->add_option("src", spec.src, "source module name");
  chom->add_option("tgt", spec.tgt, "target module name");

  auto* verify = leaf(app.add_subcommand("verify", "run a verification suite"), "verify");
  verify->add_option("kind", spec.kind,
                     "main-theorem, morphic, phantomless, pgroup, singularity, or pseudo-coherence")
      ->required();

  auto* pg = app.add_subcommand("pgroup", "abelian colimit classification");
  pg->require_subcommand(1);
  auto* pgc = leaf(pg->add_subcommand("classify", "classify a rule-generated sequence"),
                   "pgroup-classify");
  pgc->add_option("kind", spec.kind, "canonical-pruefer, constant, or socle-ramp")->required();

  auto* sg = app.add_subcommand("sg", "derived quotient by perfect complexes");
  sg->require_subcommand(1);
  auto* sgh = leaf(sg->add_subcommand("hom", "graded quotient hom dimensions"), "hom", "sg");
  sgh->add_option("src", spec.src, "source module name");
  sgh->add_option("tgt", spec.tgt, "target module name");

  auto* mo = app.add_subcommand("morphic", "morphism-category checks");
  mo->require_subcommand(1);
  leaf(mo->add_subcommand("verify", "run the morphism-category suite"), "verify", "morphic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (window.size() == 2) {
    spec.window_lo = window[0];
    spec.window_hi = window[1];
  }

  try {
    auto rep = pcc::run_job(spec);
    std::cout << (format == "structured" ? rep.to_structured() : rep.to_text()) << "\n";
    return rep.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
