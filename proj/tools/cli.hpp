#pragma once

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdelta/cdelta.hpp"

namespace cdelta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUndefined = 2;

inline int report_error(const Error& e, std::ostream& err) {
  err << error_json(e).dump() << '\n';
  return e.kind() == ErrorKind::kUndefinedDivergence ? kExitUndefined : kExitFailure;
}

/// Entry point shared by the binary and the tests. All output goes through
/// `out` / `err`; nothing reads the environment.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"correlation of divergency (c_delta) between two paired series", "cdelta"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string variant_name = "squared";
  std::string norm_name = "raw";
  std::string missing_name = "error";
  bool text = false;

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--variant", variant_name, "squared | absolute")
        ->check(CLI::IsMember({"squared", "absolute"}));
    sub->add_option("--normalization", norm_name, "raw | formula")
        ->check(CLI::IsMember({"raw", "formula"}));
    sub->add_option("--missing", missing_name, "error | drop (pairwise)")
        ->check(CLI::IsMember({"error", "drop"}));
    auto* json_flag = sub->add_flag("--json", "JSON output (default)");
    sub->add_flag("--text", text, "human-readable output")->excludes(json_flag);
  };

  std::string input;
  std::string x_sel;
  std::string y_sel;
  bool rescale = true;
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  auto* compute = app.add_subcommand("compute", "compute c_delta for one pair of columns");
  compute->add_option("--input", input, "CSV file")->required();
  compute->add_option("--x", x_sel, "x column (header name or zero-based index)")->required();
  compute->add_option("--y", y_sel, "y column (header name or zero-based index)")->required();
  compute->add_flag("--rescale,!--no-rescale", rescale, "report self-similarities and rescaled value");
  compute->add_option("--permutations", permutations, "permutation null size, 0 disables")
      ->capture_default_str();
  compute->add_option("--seed", seed, "seed for the permutation null")->capture_default_str();
  compute->add_option("--threads", threads, "worker threads for the null (0 = all cores)");
  add_shared(compute);

  std::string manifest_path;
  auto* batch = app.add_subcommand("batch", "rank many pairs by rescaled c_delta");
  batch->add_option("--manifest", manifest_path, "JSON manifest of labeled pairs")->required();
  add_shared(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(Error(ErrorKind::kUsageError, e.what()), err);
  }

  const CdeltaConfig config{*parse_variant(variant_name), *parse_normalization(norm_name)};
  const MissingPolicy missing =
      missing_name == "drop" ? MissingPolicy::kDropPairwise : MissingPolicy::kError;

  try {
    if (compute->parsed()) {
      const auto sample = ingest_csv(input, x_sel, y_sel, missing);
      const auto doc = build_report(sample, {config, rescale, permutations, seed, threads});
      if (text) {
        out << to_text(doc);
      } else {
        out << to_json(doc).dump(2) << '\n';
      }
      return kExitOk;
    }
    const auto manifest = read_manifest(manifest_path);
    const auto rows = run_batch(manifest, config, missing);
    if (text) {
      out << to_text(rows);
    } else {
      out << to_json(rows).dump(2) << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << nlohmann::ordered_json{{"error", "internal"}, {"message", e.what()},
                                  {"context", nlohmann::ordered_json::object()}}
               .dump()
        << '\n';
    return kExitFailure;
  }
}

}  // namespace cdelta::cli
