#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qdcel/config.hpp"

namespace qdcel {

// Rectangular numeric table with a textual per-row status.  Failed rows
// carry NaNs in the task columns and the error message in the status.
struct ResultTable {
  std::vector<std::string> metadata;  // emitted as '# ' lines
  std::vector<std::string> columns;   // excludes the trailing status column
  std::vector<std::vector<double>> rows;
  std::vector<std::string> status;    // "ok" or an error summary

  void write_csv(std::ostream& os) const;
};

// Evaluate the configured tasks over the sweep; rows are computed on a
// bounded worker pool and assembled in sweep order, so the CSV body is
// deterministic.
ResultTable run_sweep(const RunConfig& c, int max_threads = 0);

// Preconfigured figure sweeps (fig2 .. fig8); overrides are key=value
// pairs applied on top of the preset before running.
ResultTable run_figure(const std::string& tag,
                       const std::vector<std::string>& overrides = {},
                       int max_threads = 0);

const std::vector<std::string>& known_figures();

}  // namespace qdcel
