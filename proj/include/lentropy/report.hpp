#pragma once

// CSV and SVG emitters for command reports. Output is byte-stable for equal input.

#include "lentropy/compacta.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace lentropy::report {

/// Integers and doubles are written bare, strings always quoted.
using Cell = std::variant<std::int64_t, double, std::string>;

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<Cell>>& rows);

/// One row per Cantor-Bendixson level 0..rank: realized points as ticks and
/// the widest gaps as bars. Empty levels are drawn as a labelled blank row.
std::string svg_cb_cascade(const compacta::Scheme& s, std::size_t depth = 4, std::size_t gaps_per_level = 8);

/// Step chart of a count per step (e.g. pairs in each Gamma iterate).
std::string svg_step_chart(const std::string& title, const std::vector<std::size_t>& counts);

/// Vertical bars in [0,1], one per label.
std::string svg_bars(const std::string& title, const std::vector<std::string>& labels,
                     const std::vector<double>& values);

}  // namespace lentropy::report
