#pragma once

#include <iosfwd>
#include <optional>

#include "newton_ensemble/common.hpp"
#include "newton_ensemble/polytope.hpp"

namespace newton_ensemble {

// Polytope input document: {"vertices": [[int,...],...]} with an optional
// "p" override for a non-minimal embedding.
LatticePolytope load_polytope_json(const std::string& text);
LatticePolytope load_polytope_file(const std::string& path);

struct Provenance {
  std::string tool = "newton-ensemble";
  std::string version;
  std::string config;     // echo of the resolved run configuration
  std::optional<std::uint64_t> seed;
  bool deterministic = false;  // suppress the timestamp line
};

// CSV with '#'-prefixed provenance header lines and one column-name row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const Provenance& prov,
            const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& values);
  int rows_written() const { return rows_; }

 private:
  std::ostream& out_;
  int columns_ = 0;
  int rows_ = 0;
};

// Re-parses an emitted CSV: every data row must have the declared column
// count and numeric fields must parse.  Returns the data row count.
int validate_csv_file(const std::string& path);

std::string provenance_json(const Provenance& prov);

}  // namespace newton_ensemble
