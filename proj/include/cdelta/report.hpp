#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include <json.hpp>

#include "cdelta/coefficient.hpp"
#include "cdelta/config.hpp"
#include "cdelta/error.hpp"
#include "cdelta/null.hpp"
#include "cdelta/reference.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

inline constexpr const char* kVersion = "0.1.0";

struct RescaleSection {
  double self_x = 0.0;
  double self_y = 0.0;
  double cdelta_max = 0.0;
  double rescaled = 0.0;
};

struct NullSection {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string rng;
  NullSummary summary;
};

/// Everything one `compute` run reports. Round-trips through JSON.
struct ReportDocument {
  std::size_t n = 0;
  CdeltaConfig config;
  double cdelta = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  std::optional<RescaleSection> rescale;
  double pearson = 0.0;
  double spearman = 0.0;
  std::optional<NullSection> null;
  std::string version = kVersion;
};

struct ReportOptions {
  CdeltaConfig config;
  bool rescale = true;
  std::size_t permutations = kDefaultPermutations;  // 0 disables the null
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

inline ReportDocument build_report(const PairedSample& sample, const ReportOptions& opts) {
  const CdeltaReport core = rescaled_cdelta(sample, opts.config);

  ReportDocument doc;
  doc.n = sample.size();
  doc.config = opts.config;
  doc.cdelta = core.observed.value;
  doc.numerator = core.observed.numerator;
  doc.denominator = core.observed.denominator;
  if (opts.rescale) {
    doc.rescale = RescaleSection{core.self_x.value, core.self_y.value, core.cdelta_max, core.rescaled};
  }
  doc.pearson = pearson(sample).r;
  doc.spearman = spearman(sample).r;
  if (opts.permutations > 0) {
    const auto null = permutation_null(sample, opts.config, opts.permutations, opts.seed, opts.threads);
    doc.null = NullSection{null.k, null.seed, std::string(kRngDescription),
                           summarize_null(null, core.observed.value)};
  }
  return doc;
}

inline nlohmann::ordered_json to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["n"] = doc.n;
  j["variant"] = std::string(to_string(doc.config.variant));
  j["normalization"] = std::string(to_string(doc.config.normalization));
  j["cdelta"] = doc.cdelta;
  j["numerator"] = doc.numerator;
  j["denominator"] = doc.denominator;
  if (doc.rescale) {
    j["self_x"] = doc.rescale->self_x;
    j["self_y"] = doc.rescale->self_y;
    j["cdelta_max"] = doc.rescale->cdelta_max;
    j["rescaled"] = doc.rescale->rescaled;
  }
  j["pearson"] = doc.pearson;
  j["spearman"] = doc.spearman;
  if (doc.null) {
    const auto& s = doc.null->summary;
    nlohmann::ordered_json nj;
    nj["k"] = doc.null->k;
    nj["seed"] = doc.null->seed;
    nj["rng"] = doc.null->rng;
    nj["percentile"] = s.percentile;
    nj["pseudo_p"] = s.pseudo_p;
    nj["mean"] = s.mean;
    nj["sd"] = s.sd;
    nj["quantiles"] = {{"q01", s.quantiles.q01}, {"q05", s.quantiles.q05}, {"q50", s.quantiles.q50},
                       {"q95", s.quantiles.q95}, {"q99", s.quantiles.q99}};
    j["null"] = std::move(nj);
  }
  j["version"] = doc.version;
  return j;
}

inline ReportDocument report_from_json(const nlohmann::json& j) {
  ReportDocument doc;
  doc.n = j.at("n").get<std::size_t>();
  const auto variant = parse_variant(j.at("variant").get<std::string>());
  const auto norm = parse_normalization(j.at("normalization").get<std::string>());
  if (!variant || !norm) {
    throw Error(ErrorKind::kParseError, "unknown variant or normalization in report");
  }
  doc.config = {*variant, *norm};
  doc.cdelta = j.at("cdelta").get<double>();
  doc.numerator = j.at("numerator").get<double>();
  doc.denominator = j.at("denominator").get<double>();
  if (j.contains("rescaled")) {
    doc.rescale = RescaleSection{j.at("self_x").get<double>(), j.at("self_y").get<double>(),
                                 j.at("cdelta_max").get<double>(), j.at("rescaled").get<double>()};
  }
  doc.pearson = j.at("pearson").get<double>();
  doc.spearman = j.at("spearman").get<double>();
  if (j.contains("null")) {
    const auto& nj = j.at("null");
    NullSection ns;
    ns.k = nj.at("k").get<std::size_t>();
    ns.seed = nj.at("seed").get<std::uint64_t>();
    ns.rng = nj.value("rng", std::string{});
    ns.summary.observed = doc.cdelta;
    ns.summary.percentile = nj.at("percentile").get<double>();
    ns.summary.pseudo_p = nj.at("pseudo_p").get<double>();
    ns.summary.mean = nj.at("mean").get<double>();
    ns.summary.sd = nj.at("sd").get<double>();
    const auto& q = nj.at("quantiles");
    ns.summary.quantiles = {q.at("q01").get<double>(), q.at("q05").get<double>(),
                            q.at("q50").get<double>(), q.at("q95").get<double>(),
                            q.at("q99").get<double>()};
    doc.null = std::move(ns);
  }
  doc.version = j.at("version").get<std::string>();
  return doc;
}

/// Fixed 4-decimal display used by all text output.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string to_text(const ReportDocument& doc) {
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) {
    out += key;
    out.append(key.size() < 16 ? 16 - key.size() : 1, ' ');
    out += value;
    out += '\n';
  };
  line("n", std::to_string(doc.n));
  line("variant", std::string(to_string(doc.config.variant)));
  line("normalization", std::string(to_string(doc.config.normalization)));
  line("cdelta", format_number(doc.cdelta));
  line("numerator", format_number(doc.numerator));
  line("denominator", format_number(doc.denominator));
  if (doc.rescale) {
    line("self_x", format_number(doc.rescale->self_x));
    line("self_y", format_number(doc.rescale->self_y));
    line("cdelta_max", format_number(doc.rescale->cdelta_max));
    line("rescaled", format_number(doc.rescale->rescaled));
  }
  line("pearson", format_number(doc.pearson));
  line("spearman", format_number(doc.spearman));
  if (doc.null) {
    const auto& s = doc.null->summary;
    line("null.k", std::to_string(doc.null->k));
    line("null.seed", std::to_string(doc.null->seed));
    line("null.rng", doc.null->rng);
    line("null.percentile", format_number(s.percentile));
    line("null.pseudo_p", format_number(s.pseudo_p));
    line("null.mean", format_number(s.mean));
    line("null.sd", format_number(s.sd));
    line("null.q01", format_number(s.quantiles.q01));
    line("null.q05", format_number(s.quantiles.q05));
    line("null.q50", format_number(s.quantiles.q50));
    line("null.q95", format_number(s.quantiles.q95));
    line("null.q99", format_number(s.quantiles.q99));
  }
  line("version", doc.version);
  out += "note: c_delta is unbounded above and blind to the direction of divergence; "
         "interpret it against the data at hand.\n";
  return out;
}

inline nlohmann::ordered_json error_json(const Error& e) {
  nlohmann::ordered_json j;
  j["error"] = std::string(to_string(e.kind()));
  j["message"] = e.what();
  j["context"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : e.context()) j["context"][k] = v;
  return j;
}

}  // namespace cdelta
