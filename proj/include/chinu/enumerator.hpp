#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chinu/words.hpp"

namespace chinu {

/// Closed, consistent, standardized coset table. Rows are cosets (0-based
/// internally, printed 1-based), columns come in generator/inverse pairs
/// (column 2i acts by generator i, 2i+1 by its inverse). Coset 0 is the
/// subgroup coset; rows are renumbered in breadth-first order over the
/// columns, which makes every derived object reproducible bit-for-bit.
struct CosetTable {
  size_t ngens = 0;
  size_t ncosets = 0;
  std::vector<int32_t> cells;  // ncosets * 2*ngens
  std::vector<Word> subgroup_generators;

  size_t width() const { return 2 * ngens; }
  int32_t at(int32_t coset, int32_t col) const { return cells[size_t(coset) * width() + col]; }
  int32_t apply(int32_t coset, const Word& w) const;

  /// Diagnostic TSV dump: one row per coset, one column per signed generator.
  std::string dump_tsv(const std::vector<std::string>& names) const;
};

struct EnumerationOptions {
  size_t limit = 2'000'000;  // max cosets ever allocated; exhaustion throws LimitError
};

/// HLT-style Todd-Coxeter over `p` relative to the subgroup generated by
/// `subgroup`. Returns the standardized table; the row count is the index.
/// Deterministic for fixed inputs.
CosetTable enumerate(const Presentation& p, const std::vector<Word>& subgroup,
                     const EnumerationOptions& opt = {});

/// Validation of the table contract: closedness, the inverse-pairing
/// consistency, all relators tracing trivially at every coset and subgroup
/// generators closing at coset 0. Throws Error on violation.
void validate_table(const CosetTable& t, const Presentation& p);

}  // namespace chinu
