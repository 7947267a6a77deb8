#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "am/dataset.hpp"

namespace am {

// Comma-separated numeric table: first row is the header, every further row
// holds decimal-point reals. The last column is the response, the remaining
// columns are covariates (a single column yields a covariate-free dataset).
// Ragged rows and non-numeric cells fail with the 1-based line number.
Dataset read_csv(const std::string& path);
Dataset read_csv_stream(std::istream& in, const std::string& name);

// Locale-independent formatting with a fixed number of significant digits.
std::string format_double(double v, int significant_digits = 10);

// Round through the 10-significant-digit representation used for output.
double round_sig(double v, int significant_digits = 10);

}  // namespace am
