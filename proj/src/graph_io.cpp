// Copyright 2026 The bipexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

#include "bipexp/graph.hpp"
#include "bipexp/io.hpp"
#include "csv.hpp"

namespace bipexp {

EdgeList parse_edge_csv(const std::string& text, const std::string& source) {
  const csv::Table t = csv::parse(text, source);
  if (t.header.fields.size() != 2 || t.header.fields[0] != "intervention_id" ||
      t.header.fields[1] != "outcome_id") {
    csv::row_error(source, t.header.line, "header must be 'intervention_id,outcome_id'");
  }
  EdgeList out;
  out.edges.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (row.fields.size() != 2) csv::row_error(source, row.line, "expected 2 fields");
    const long long k = csv::to_int(row.fields[0], source, row.line);
    const long long i = csv::to_int(row.fields[1], source, row.line);
    if (k < 1 || i < 1) csv::row_error(source, row.line, "ids are 1-based");
    out.edges.push_back({static_cast<Index>(k - 1), static_cast<Index>(i - 1)});
    out.max_intervention = std::max<std::size_t>(out.max_intervention, static_cast<std::size_t>(k));
    out.max_outcome = std::max<std::size_t>(out.max_outcome, static_cast<std::size_t>(i));
  }
  return out;
}

BipartiteGraph graph_from_edge_list(const EdgeList& list) {
  std::vector<char> seen(list.max_outcome, 0);
  for (const Edge& e : list.edges) seen[e.outcome] = 1;
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) missing.push_back(i + 1);
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << missing.size() << " outcome unit(s) without neighbors, outcome_id:";
    for (std::size_t t = 0; t < missing.size() && t < 20; ++t) os << ' ' << missing[t];
    if (missing.size() > 20) os << " ...";
    fail(ErrorCode::kIsolatedOutcomeUnit, os.str());
  }
  return BipartiteGraph::build(list.max_intervention, list.max_outcome, list.edges);
}

EdgeList read_edge_csv(const std::string& path) { return parse_edge_csv(csv::read_file(path), path); }

std::string format_edge_csv(const BipartiteGraph& g) {
  std::ostringstream os;
  os << "intervention_id,outcome_id\n";
  for (const Edge& e : g.edges()) os << e.intervention + 1 << ',' << e.outcome + 1 << '\n';
  return os.str();
}

ObservedData parse_data_csv(const std::string& text, const std::string& source) {
  const csv::Table t = csv::parse(text, source);
  const std::size_t id_col = csv::column(t, "outcome_id", source);
  const std::size_t y_col = csv::column(t, "y", source);
  std::vector<std::size_t> x_cols;
  ObservedData out;
  for (std::size_t d = 1;; ++d) {
    const std::string name = "x" + std::to_string(d);
    bool found = false;
    for (std::size_t c = 0; c < t.header.fields.size(); ++c) {
      if (t.header.fields[c] == name) {
        x_cols.push_back(c);
        out.covariate_names.push_back(name);
        found = true;
      }
    }
    if (!found) break;
  }

  const std::size_t n = t.rows.size();
  out.y.resize(static_cast<Eigen::Index>(n));
  out.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(x_cols.size()));
  std::vector<char> seen(n, 0);
  for (const auto& row : t.rows) {
    if (row.fields.size() != t.header.fields.size()) {
      csv::row_error(source, row.line, "expected " + std::to_string(t.header.fields.size()) + " fields");
    }
    const long long id = csv::to_int(row.fields[id_col], source, row.line);
    if (id < 1 || static_cast<std::size_t>(id) > n) {
      csv::row_error(source, row.line, "outcome_id must lie in 1.." + std::to_string(n));
    }
    const auto r = static_cast<std::size_t>(id - 1);
    if (seen[r]) csv::row_error(source, row.line, "duplicate outcome_id " + std::to_string(id));
    seen[r] = 1;
    out.y(static_cast<Eigen::Index>(r)) = csv::to_double(row.fields[y_col], source, row.line);
    for (std::size_t d = 0; d < x_cols.size(); ++d) {
      out.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d)) =
          csv::to_double(row.fields[x_cols[d]], source, row.line);
    }
  }
  return out;
}

ObservedData read_data_csv(const std::string& path) { return parse_data_csv(csv::read_file(path), path); }

std::vector<std::uint8_t> parse_assignment_csv(const std::string& text, const std::string& source) {
  const csv::Table t = csv::parse(text, source);
  const std::size_t id_col = csv::column(t, "intervention_id", source);
  const std::size_t z_col = csv::column(t, "z", source);
  const std::size_t m = t.rows.size();
  std::vector<std::uint8_t> z(m, 0);
  std::vector<char> seen(m, 0);
  for (const auto& row : t.rows) {
    if (row.fields.size() != t.header.fields.size()) csv::row_error(source, row.line, "wrong field count");
    const long long id = csv::to_int(row.fields[id_col], source, row.line);
    if (id < 1 || static_cast<std::size_t>(id) > m) {
      csv::row_error(source, row.line, "intervention_id must lie in 1.." + std::to_string(m));
    }
    const auto k = static_cast<std::size_t>(id - 1);
    if (seen[k]) csv::row_error(source, row.line, "duplicate intervention_id " + std::to_string(id));
    seen[k] = 1;
    const long long v = csv::to_int(row.fields[z_col], source, row.line);
    if (v != 0 && v != 1) csv::row_error(source, row.line, "z must be 0 or 1");
    z[k] = static_cast<std::uint8_t>(v);
  }
  return z;
}

std::vector<std::uint8_t> read_assignment_csv(const std::string& path) {
  return parse_assignment_csv(csv::read_file(path), path);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIoError, "sha256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int b = 0; b < len; ++b) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[b]);
  return os.str();
}

}  // namespace bipexp
