// Job specifications and the dispatcher behind the command-line verbs; kept
// out of the tool binary so tests can drive jobs directly.
#pragma once

#include "pcc/report.hpp"

#include "pcc/algebra.hpp"

namespace pcc {

struct JobSpec {
  std::string task;  // algebra-list, algebra-define, hom, resolve,
                     // cauchy-check, pgroup-classify, verify
  std::string kind;  // hom flavor / verification suite / sequence rule
  std::string algebra = "d2";  // catalog name or a JSON definition file
  std::string file;            // algebra-define input
  std::string src = "k", tgt = "k";
  int shift = 0;
  int horizon = 6;
  int window_lo = -2, window_hi = 2;
  int sample = 10;
  unsigned seed = 1;
};

// JSON algebra definitions; schema in docs/algebra-format.md
AlgebraPtr load_algebra_json(const std::string& path);
// catalog name, or a path ending in .json
AlgebraPtr resolve_algebra(const std::string& name_or_path);

// throws std::invalid_argument / std::runtime_error on malformed input;
// a returned report with ok() == false is a verification failure
JobReport run_job(const JobSpec& spec);

}  // namespace pcc
