// semicro command line: semantic microaggregation of set-valued query logs.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "semicro/pipeline.hpp"

namespace {

struct CliOptions {
  semicro::PipelineConfig cfg;
  std::string format = "plain";
  std::string stopwords;
  bool no_suppress_small = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt, bool with_out) {
  cmd->add_option("--input", opt.cfg.input, "Input query log file")->required();
  cmd->add_option("--format", opt.format, "Input format: aol-tsv or plain")
      ->check(CLI::IsMember({"aol-tsv", "plain"}));
  cmd->add_option("--taxonomy", opt.cfg.taxonomy, "Taxonomy file")->required();
  cmd->add_option("--stopwords", opt.stopwords, "Stopword file (default: built-in list)");
  cmd->add_option("--k", opt.cfg.k, "Minimum published cluster size (default 5)");
  cmd->add_option("--threshold", opt.cfg.threshold, "Similarity threshold (default 0.8)");
  cmd->add_flag("--no-suppress-small", opt.no_suppress_small,
                "Publish clusters smaller than k instead of suppressing them");
  cmd->add_option("--threads", opt.cfg.threads, "Worker threads for the pair stage (default 1)");
  if (with_out) {
    cmd->add_option("--out", opt.cfg.out_dir, "Output directory")->required();
  }
}

semicro::PipelineConfig finalize(CliOptions& opt) {
  if (auto fmt = semicro::parse_log_format(opt.format)) opt.cfg.format = *fmt;
  if (!opt.stopwords.empty()) opt.cfg.stopwords = opt.stopwords;
  opt.cfg.suppress_small = !opt.no_suppress_small;
  return opt.cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anonymizes set-valued records by semantic microaggregation: taxonomy-based "
               "distances, adaptive-size k-anonymous clusters, centroid redaction and "
               "information-loss metrics."};
  app.require_subcommand(1);

  CliOptions run_opt, ingest_opt, distance_opt, cluster_opt, metrics_opt, oracle_opt;

  CLI::App* run = app.add_subcommand("run", "Full pipeline; writes clusters.json, "
                                            "anonymized.tsv, metrics.csv and summary.json");
  add_common_flags(run, run_opt, true);

  CLI::App* ingest = app.add_subcommand("ingest", "Emit admitted records as TSV on stdout");
  add_common_flags(ingest, ingest_opt, false);

  CLI::App* distance = app.add_subcommand("distance", "Emit pair distances as CSV on stdout");
  add_common_flags(distance, distance_opt, false);

  CLI::App* cluster = app.add_subcommand("cluster", "Stop after clustering; writes clusters.json");
  add_common_flags(cluster, cluster_opt, true);

  CLI::App* metrics = app.add_subcommand(
      "metrics", "Recompute cohesion, SSE, SST and IL from a prior run's clusters.json");
  add_common_flags(metrics, metrics_opt, true);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive small-instance baseline");
  oracle->group("");  // hidden
  add_common_flags(oracle, oracle_opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return semicro::kExitConfig;
  }

  if (run->parsed()) return semicro::cmd_run(finalize(run_opt), std::cerr);
  if (ingest->parsed()) return semicro::cmd_ingest(finalize(ingest_opt), std::cout, std::cerr);
  if (distance->parsed()) return semicro::cmd_distance(finalize(distance_opt), std::cout, std::cerr);
  if (cluster->parsed()) return semicro::cmd_cluster(finalize(cluster_opt), std::cerr);
  if (metrics->parsed()) return semicro::cmd_metrics(finalize(metrics_opt), std::cout, std::cerr);
  if (oracle->parsed()) return semicro::cmd_oracle(finalize(oracle_opt), std::cout, std::cerr);
  return semicro::kExitConfig;
}
