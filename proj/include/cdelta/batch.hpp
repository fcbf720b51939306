#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdelta/coefficient.hpp"
#include "cdelta/csv.hpp"
#include "cdelta/error.hpp"
#include "cdelta/reference.hpp"
#include "cdelta/report.hpp"

namespace cdelta {

struct BatchEntry {
  std::string label;
  std::filesystem::path file;
  std::string x;
  std::string y;
};

struct BatchManifest {
  std::vector<BatchEntry> entries;
};

enum class BatchStatus { kOk, kUndefined, kError };

constexpr std::string_view to_string(BatchStatus s) {
  switch (s) {
    case BatchStatus::kOk: return "ok";
    case BatchStatus::kUndefined: return "undefined";
    case BatchStatus::kError: return "error";
  }
  return "error";
}

struct BatchRow {
  std::optional<std::size_t> rank;  // only for kOk rows
  std::string label;
  BatchStatus status = BatchStatus::kOk;
  double cdelta = 0.0;
  double cdelta_max = 0.0;
  double rescaled = 0.0;
  double pearson = 0.0;
  double spearman = 0.0;
  std::string message;
};

// {"pairs": [{"label": ..., "file": ..., "x": ..., "y": ...}, ...]}
// Relative file paths resolve against `base_dir`.
inline BatchManifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::kManifestError, msg); };
  if (!j.is_object() || !j.contains("pairs") || !j.at("pairs").is_array()) {
    fail("manifest must be an object with a \"pairs\" array");
  }
  BatchManifest m;
  std::set<std::string> seen;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_object()) fail("each pair must be an object");
    for (const char* key : {"label", "file", "x", "y"}) {
      if (!p.contains(key)) fail(std::string("pair is missing \"") + key + "\"");
    }
    auto as_selector = [](const nlohmann::json& v) {
      return v.is_number_unsigned() || v.is_number_integer() ? std::to_string(v.get<long long>())
                                                             : v.get<std::string>();
    };
    BatchEntry e;
    e.label = p.at("label").get<std::string>();
    std::filesystem::path file = p.at("file").get<std::string>();
    e.file = file.is_relative() && !base_dir.empty() ? base_dir / file : file;
    e.x = as_selector(p.at("x"));
    e.y = as_selector(p.at("y"));
    if (!seen.insert(e.label).second) fail("duplicate label: " + e.label);
    m.entries.push_back(std::move(e));
  }
  if (m.entries.empty()) fail("manifest lists no pairs");
  return m;
}

inline BatchManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kFileNotFound, "cannot open manifest", {{"path", path.string()}});
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kManifestError, std::string("manifest is not valid JSON: ") + ex.what());
  }
  return parse_manifest(j, path.parent_path());
}

/// Ranked rows: computable pairs by rescaled c_δ descending (ties by label),
/// followed by undefined and failed pairs in label order.
inline std::vector<BatchRow> run_batch(const BatchManifest& manifest, const CdeltaConfig& config,
                                       MissingPolicy missing = MissingPolicy::kError) {
  std::vector<BatchRow> rows;
  rows.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    BatchRow row;
    row.label = e.label;
    try {
      const auto sample = ingest_csv(e.file, e.x, e.y, missing);
      const auto rep = rescaled_cdelta(sample, config);
      row.cdelta = rep.observed.value;
      row.cdelta_max = rep.cdelta_max;
      row.rescaled = rep.rescaled;
      row.pearson = pearson(sample).r;
      row.spearman = spearman(sample).r;
    } catch (const Error& err) {
      row.status = err.kind() == ErrorKind::kUndefinedDivergence ? BatchStatus::kUndefined
                                                                 : BatchStatus::kError;
      row.message = std::string(to_string(err.kind())) + ": " + err.what();
    }
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const BatchRow& a, const BatchRow& b) {
    if (a.status != b.status) return a.status < b.status;
    if (a.status == BatchStatus::kOk && a.rescaled != b.rescaled) return a.rescaled > b.rescaled;
    return a.label < b.label;
  });
  std::size_t rank = 1;
  for (auto& r : rows) {
    if (r.status == BatchStatus::kOk) r.rank = rank++;
  }
  return rows;
}

inline nlohmann::ordered_json to_json(const std::vector<BatchRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["rank"] = r.rank ? nlohmann::ordered_json(*r.rank) : nlohmann::ordered_json(nullptr);
    j["label"] = r.label;
    j["status"] = std::string(to_string(r.status));
    if (r.status == BatchStatus::kOk) {
      j["cdelta"] = r.cdelta;
      j["cdelta_max"] = r.cdelta_max;
      j["rescaled"] = r.rescaled;
      j["pearson"] = r.pearson;
      j["spearman"] = r.spearman;
    } else {
      j["message"] = r.message;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

inline std::string to_text(const std::vector<BatchRow>& rows) {
  std::string out = "rank\tlabel\tcdelta\tcdelta_max\trescaled\tpearson\tspearman\n";
  for (const auto& r : rows) {
    out += r.rank ? std::to_string(*r.rank) : std::string("-");
    out += '\t' + r.label;
    if (r.status == BatchStatus::kOk) {
      for (double v : {r.cdelta, r.cdelta_max, r.rescaled, r.pearson, r.spearman}) {
        out += '\t' + format_number(v);
      }
    } else {
      out += '\t' + std::string(to_string(r.status)) + "\t" + r.message;
    }
    out += '\n';
  }
  return out;
}

}  // namespace cdelta
