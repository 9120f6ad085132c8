// Copyright 2026 The qmckit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qmckit/pointsets.hpp"
#include "qmckit/quality.hpp"

namespace qmckit::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Shortest "%.17g" rendering; reading it back with strtod is exact.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One row per point, header x1..xs. Exact sets write "num/den" cells
/// unless `force_float` is set.
inline std::string points_to_csv(const PointSet& p, bool force_float = false) {
  std::string out;
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    out += (j ? ",x" : "x") + std::to_string(j + 1);
  }
  out += '\n';
  const bool exact = p.is_exact() && !force_float;
  for (std::size_t n = 0; n < p.size(); ++n) {
    for (std::size_t j = 0; j < p.dimension(); ++j) {
      if (j) out += ',';
      if (exact) {
        out += std::to_string(p.numerator(n, j)) + '/' + std::to_string(p.denominator(j));
      } else {
        out += format_double(p.value(n, j));
      }
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    cells.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

inline std::uint64_t parse_u64(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    if (text.empty() || text.front() == '-') throw std::invalid_argument("");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": bad integer '" + text + "'");
  }
  return v;
}

inline double parse_double(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace detail

/// Parses CSV produced by points_to_csv. A file whose cells are all
/// fractions yields an exact set, with each column brought to the least
/// common denominator; anything else yields a float set.
inline PointSet points_from_csv(std::string_view text, Provenance provenance = {"csv", {}}) {
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1 && (line.front() == 'x' || line.front() == 'X')) continue;
    rows.push_back(detail::split(line, ','));
  }
  if (rows.empty()) throw std::invalid_argument("point CSV has no rows");
  const std::size_t s = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != s) {
      throw std::invalid_argument("point CSV row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " cells, expected " + std::to_string(s));
    }
  }
  bool all_fractions = true;
  for (const auto& r : rows) {
    for (const auto& c : r) all_fractions = all_fractions && c.find('/') != std::string::npos;
  }
  const std::size_t n = rows.size();
  if (!all_fractions) {
    std::vector<double> values;
    values.reserve(n * s);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& c : rows[i]) {
        const auto slash = c.find('/');
        if (slash == std::string::npos) {
          values.push_back(detail::parse_double(c, i + 1));
        } else {
          values.push_back(static_cast<double>(detail::parse_u64(c.substr(0, slash), i + 1)) /
                           static_cast<double>(detail::parse_u64(c.substr(slash + 1), i + 1)));
        }
      }
    }
    return PointSet::floating(s, n, std::move(values), std::move(provenance));
  }
  std::vector<std::uint64_t> nums(n * s);
  std::vector<std::uint64_t> dens(n * s);
  std::vector<std::uint64_t> column_den(s, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      const auto& c = rows[i][j];
      const auto slash = c.find('/');
      nums[i * s + j] = detail::parse_u64(c.substr(0, slash), i + 1);
      dens[i * s + j] = detail::parse_u64(c.substr(slash + 1), i + 1);
      if (dens[i * s + j] == 0) throw std::invalid_argument("line " + std::to_string(i + 1) + ": zero denominator");
      const std::uint64_t g = std::gcd(column_den[j], dens[i * s + j]);
      const unsigned __int128 l = static_cast<unsigned __int128>(column_den[j] / g) * dens[i * s + j];
      if (l > ~std::uint64_t{0}) throw std::overflow_error("column denominators overflow 64 bits");
      column_den[j] = static_cast<std::uint64_t>(l);
    }
  }
  for (std::size_t i = 0; i < n * s; ++i) nums[i] *= column_den[i % s] / dens[i];
  return PointSet::exact(s, n, std::move(nums), std::move(column_den), std::move(provenance));
}

inline json matrices_to_json(const GeneratingMatrixSet& g) {
  json mats = json::array();
  for (const auto& c : g.matrices) {
    json rows = json::array();
    for (std::size_t r = 0; r < c.rows(); ++r) rows.push_back(c.row(r));
    mats.push_back(std::move(rows));
  }
  return {{"base", g.base}, {"rows", g.rows}, {"cols", g.cols}, {"matrices", std::move(mats)}};
}

inline GeneratingMatrixSet matrices_from_json(const json& j) {
  GeneratingMatrixSet g;
  g.base = j.at("base").get<std::uint32_t>();
  g.rows = j.at("rows").get<std::size_t>();
  g.cols = j.at("cols").get<std::size_t>();
  for (const auto& mj : j.at("matrices")) {
    if (mj.size() != g.rows) throw std::invalid_argument("generating matrix has the wrong number of rows");
    Matrix c(g.rows, g.cols);
    for (std::size_t r = 0; r < g.rows; ++r) {
      if (mj[r].size() != g.cols) throw std::invalid_argument("generating matrix row has the wrong length");
      for (std::size_t k = 0; k < g.cols; ++k) c(r, k) = mj[r][k].get<FieldElement>();
    }
    g.matrices.push_back(std::move(c));
  }
  g.validate();
  return g;
}

/// Descriptor written next to a point CSV: provenance, representation and,
/// for digital constructions, the generating matrices.
inline json sidecar(const PointSet& p, const GeneratingMatrixSet* matrices = nullptr) {
  json j = {{"kind", p.provenance().kind},
            {"params", p.provenance().params},
            {"representation", to_string(p.representation())},
            {"n", p.size()},
            {"s", p.dimension()}};
  if (matrices != nullptr) j["generating_matrices"] = matrices_to_json(*matrices);
  return j;
}

inline json to_json(const StarDiscrepancy& d) {
  json j = {{"value", d.value}};
  if (d.exact) j["exact"] = to_string(*d.exact);
  return j;
}

inline json to_json(const QualityReport& r) {
  json j = {{"n", r.n}, {"s", r.s}};
  auto put = [&j](const char* key, const auto& opt) {
    if (opt) {
      j[key] = *opt;
    } else {
      j[key] = nullptr;
    }
  };
  put("b", r.b);
  put("m", r.m);
  put("t_geometric", r.t_geometric);
  put("t_dual", r.t_dual);
  j["star_discrepancy"] = r.star_discrepancy ? to_json(*r.star_discrepancy) : json(nullptr);
  put("p2", r.p2);
  put("discrepancy_ratio", r.discrepancy_ratio);
  return j;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Command, every parameter, library version and a checksum per output
/// file. Outputs are keyed by file name so the manifest is path independent.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::string> outputs;

  void add_output(const std::string& name, std::string_view contents) {
    outputs[name] = "fnv1a64:" + fnv1a64(contents);
  }

  json to_json() const {
    return {{"command", command}, {"parameters", parameters}, {"version", kVersion}, {"outputs", outputs}};
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

}  // namespace qmckit::io
