#pragma once

#include "scx/complex.hpp"

#include <iosfwd>
#include <string>

namespace scx {

/// wsc-v1: JSON-lines complex file.  First line is a header object
/// {"format":"wsc-v1","dimension":D,"include_empty":B,"count":N}; every further
/// line is one simplex {"s":[sorted vertices],"m":mass,"interior":bool}.
/// The reader rejects unsorted or duplicated vertex lists, non-positive
/// masses, malformed JSON and face-closure violations, reporting line numbers.
void write_wsc(std::ostream& os, const WeightedComplex& cx);
void write_wsc_file(const std::string& path, const WeightedComplex& cx);
WeightedComplex read_wsc(std::istream& is);
WeightedComplex read_wsc_file(const std::string& path);

} // namespace scx
