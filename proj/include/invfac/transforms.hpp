#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "invfac/rational.hpp"

namespace invfac {

/// Finite sequence indexed from 0.
using RationalSequence = std::vector<BigRational>;

/// b_n = sum_{k<=n} [n, k] a_k.
RationalSequence stirling_transform(const RationalSequence& a);

/// a_n = sum_{k<=n} (-1)^(n-k) S(n, k) b_k. Exact inverse of stirling_transform.
RationalSequence inverse_stirling_transform(const RationalSequence& b);

/// b_n = sum_{k<=n} s(n, k) a_k with signed first-kind numbers.
RationalSequence signed_stirling_transform(const RationalSequence& a);

/// Power-series coefficients of sum a_k / z^(k+1) to the factorial-series
/// coefficients of sum b_n / (z(z+1)...(z+n)).
RationalSequence factorial_series_from_power(const RationalSequence& a);

/// Factorial-series coefficients to the coefficients of the formal
/// (generally divergent) expansion sum a_k / z^(k+1).
RationalSequence asymptotic_from_factorial(const RationalSequence& b);

// Sequence files: one rational per line ("p/q" or "p"), blank lines and lines
// starting with '#' ignored. A document whose first non-space character is
// '[' is read as a JSON array of strings instead.

/// Throws ParseError carrying the 1-based line number of the bad entry.
RationalSequence parse_sequence(const std::string& text);
RationalSequence read_sequence_file(const std::string& path);

std::string format_sequence_text(const RationalSequence& seq);
std::string format_sequence_json(const RationalSequence& seq);
std::string format_sequence_csv(const RationalSequence& seq);

}  // namespace invfac
