#pragma once

// Published comparison tables: mu = 0 throughout, one sigma per table, five
// theta columns, one row of printed digits per method.

#include <array>
#include <cstddef>
#include <string>

#include "lnmgf/errors.hpp"
#include "lnmgf/estimate.hpp"

namespace lnmgf {

struct PaperTable {
  int id = 0;
  double mu = 0.0;
  double sigma = 0.0;
  std::array<double, 5> theta{};
  // Rows in Method order: zero_entropy, thin_tile, laplace_w, monte_carlo.
  std::array<std::array<double, 5>, 4> rows{};

  double paper_value(Method m, std::size_t column) const {
    return rows.at(static_cast<std::size_t>(m)).at(column);
  }
};

inline constexpr std::array<PaperTable, 3> kPaperTables{{
    {1,
     0.0,
     0.1,
     {0.1, 0.3, 0.5, 1.0, 1.2},
     {{{1.105780, 1.352506, 1.654957, 2.745994, 3.365088},
       {1.105781, 1.352509, 1.654966, 2.745978, 3.364940},
       {1.105780, 1.352504, 1.654957, 2.745950, 3.364990},
       {1.105779, 1.352510, 1.654955, 2.745936, 3.365014}}}},
    {2,
     0.0,
     0.0625,
     {-0.5, -1.0, -2.0, -4.0, -8.0},
     {{{0.606234, 0.367879, 0.135863, 0.018746, 0.000373},
       {0.606235, 0.367880, 0.135862, 0.018744, 0.000373},
       {0.606235, 0.367880, 0.135862, 0.018744, 0.000373},
       {0.606235, 0.367884, 0.135863, 0.018744, 0.000373}}}},
    {3,
     0.0,
     1.0,
     {-0.5, -1.0, -2.0, -4.0, -8.0},
     {{{0.560233, 0.367879, 0.238030, 0.159668, 0.118724},
       {0.561708, 0.381755, 0.216305, 0.098046, 0.034264},
       {0.561717, 0.381752, 0.216304, 0.098042, 0.034267},
       {0.561707, 0.381729, 0.216326, 0.098069, 0.034274}}}},
}};

inline const PaperTable& paper_table(int id) {
  for (const auto& t : kPaperTables) {
    if (t.id == id) return t;
  }
  throw DomainError("paper_table: unknown table id " + std::to_string(id));
}

}  // namespace lnmgf
