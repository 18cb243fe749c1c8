#pragma once

#include <iosfwd>
#include <string>

#include "extsum/trace.hpp"

namespace extsum {

// CSV layout: '#'-prefixed header lines carrying the run metadata, then a
// mandatory column header  n,lambda,eps,x0..x{d-1},xbar0..xbar{d-1},
// eps_u_norm,dist_to_solution  and one row per record. Reals are written
// with 17 significant digits so parsing reproduces every bit; the
// dist_to_solution field is left empty when no solution set is known.
void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out);
ConvergenceTrace read_trace_csv(std::istream& in);

// JSON mirror: {"meta": {...}, "rows": [...]}.
void write_trace_json(const ConvergenceTrace& trace, std::ostream& out);
ConvergenceTrace read_trace_json(std::istream& in);

// format: "csv" or "json".
void write_trace_file(const ConvergenceTrace& trace, const std::string& path,
                      const std::string& format);
// Sniffs the format from the content.
ConvergenceTrace read_trace_file(const std::string& path);

// 17-significant-digit representation that round-trips doubles exactly.
std::string format_double(double v);

} // namespace extsum
