#include "invfac/transforms.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "invfac/errors.hpp"
#include "invfac/exact_core.hpp"

namespace invfac {

RationalSequence stirling_transform(const RationalSequence& a) {
  RationalSequence b(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    const auto row = stirling1_table().row(n);
    BigRational sum = 0;
    for (std::size_t k = 0; k <= n; ++k) sum += row[k] * a[k];
    sum.canonicalize();
    b[n] = std::move(sum);
  }
  return b;
}

RationalSequence inverse_stirling_transform(const RationalSequence& b) {
  RationalSequence a(b.size());
  for (std::size_t n = 0; n < b.size(); ++n) {
    const auto row = stirling2_table().row(n);
    BigRational sum = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      if ((n - k) % 2 == 0) {
        sum += row[k] * b[k];
      } else {
        sum -= row[k] * b[k];
      }
    }
    sum.canonicalize();
    a[n] = std::move(sum);
  }
  return a;
}

RationalSequence signed_stirling_transform(const RationalSequence& a) {
  RationalSequence b(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    BigRational sum = 0;
    for (std::size_t k = 0; k <= n; ++k) sum += stirling1_signed(n, k) * a[k];
    sum.canonicalize();
    b[n] = std::move(sum);
  }
  return b;
}

RationalSequence factorial_series_from_power(const RationalSequence& a) { return stirling_transform(a); }

RationalSequence asymptotic_from_factorial(const RationalSequence& b) { return inverse_stirling_transform(b); }

namespace {

RationalSequence parse_json_sequence(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON sequence: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("JSON sequence must be an array of strings");
  RationalSequence seq;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    if (!item.is_string()) {
      throw ParseError("JSON sequence entry " + std::to_string(i) + " is not a string");
    }
    try {
      seq.push_back(parse_rational(item.get<std::string>()));
    } catch (const ParseError& e) {
      throw ParseError("JSON sequence entry " + std::to_string(i) + ": " + e.what());
    }
  }
  if (seq.empty()) throw ParseError("sequence is empty");
  return seq;
}

}  // namespace

RationalSequence parse_sequence(const std::string& text) {
  if (const auto first = text.find_first_not_of(" \t\r\n"); first != std::string::npos && text[first] == '[') {
    return parse_json_sequence(text);
  }
  RationalSequence seq;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      seq.push_back(parse_rational(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (seq.empty()) throw ParseError("sequence is empty");
  return seq;
}

RationalSequence read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sequence(buffer.str());
}

std::string format_sequence_text(const RationalSequence& seq) {
  std::string out;
  for (const auto& value : seq) {
    out += to_string(value);
    out += '\n';
  }
  return out;
}

std::string format_sequence_json(const RationalSequence& seq) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& value : seq) doc.push_back(to_string(value));
  return doc.dump(2) + "\n";
}

std::string format_sequence_csv(const RationalSequence& seq) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < seq.size(); ++i) out += std::to_string(i) + "," + to_string(seq[i]) + "\n";
  return out;
}

}  // namespace invfac
