#include "semicro/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace semicro {

using ordered_json = nlohmann::ordered_json;

std::string format_g6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

double round_g6(double value) { return std::strtod(format_g6(value).c_str(), nullptr); }

namespace {

struct Stage {
  Taxonomy taxonomy;
  StopwordSet stopwords;
  ParsedLog log;
  std::size_t excluded = 0;
  RecordMap records;
  std::vector<PairDistance> pairs;
};

int validate(const PipelineConfig& cfg, bool needs_out, std::ostream& diag) {
  if (cfg.k < 2) {
    diag << "error: k must be >= 2\n";
    return kExitConfig;
  }
  if (!(cfg.threshold > 0.0 && cfg.threshold <= 1.0)) {
    diag << "error: threshold must be in (0, 1]\n";
    return kExitConfig;
  }
  if (cfg.threads < 1) {
    diag << "error: threads must be >= 1\n";
    return kExitConfig;
  }
  if (cfg.input.empty()) {
    diag << "error: input path required\n";
    return kExitConfig;
  }
  if (cfg.taxonomy.empty()) {
    diag << "error: taxonomy path required\n";
    return kExitConfig;
  }
  if (needs_out && cfg.out_dir.empty()) {
    diag << "error: output directory required\n";
    return kExitConfig;
  }
  return kExitOk;
}

int build_stage(const PipelineConfig& cfg, Stage& stage, std::ostream& diag, bool want_pairs) {
  try {
    stage.taxonomy = Taxonomy::load_file(cfg.taxonomy);
  } catch (const TaxonomyError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitIo;
  }
  if (cfg.stopwords) {
    try {
      stage.stopwords = StopwordSet::load_file(*cfg.stopwords);
    } catch (const std::runtime_error& e) {
      diag << "error: " << e.what() << "\n";
      return kExitIo;
    }
  } else {
    stage.stopwords = StopwordSet::defaults();
  }

  std::ifstream in(cfg.input);
  if (!in) {
    diag << "error: cannot open input file: " << cfg.input.string() << "\n";
    return kExitIo;
  }
  stage.log = parse_log(in, cfg.format);

  for (const RawLogLine& line : stage.log.lines) {
    if (auto rec = extract_attributes(line, stage.taxonomy, stage.stopwords)) {
      DedupedRecord deduped = dedup_record(*rec, stage.taxonomy, cfg.threshold);
      RecordId id = rec->record_id;
      stage.records.emplace(id, RecordBundle{std::move(*rec), std::move(deduped)});
    } else {
      ++stage.excluded;
    }
  }

  if (want_pairs && stage.records.size() >= 2) {
    std::vector<DedupedRecord> deduped;
    deduped.reserve(stage.records.size());
    for (const auto& [id, bundle] : stage.records) deduped.push_back(bundle.deduped);
    auto matrices = matching_pairs(deduped, stage.taxonomy, cfg.threshold, cfg.threads);
    stage.pairs.reserve(matrices.size());
    for (const auto& m : matrices) stage.pairs.push_back(record_distance(m));
  }
  return kExitOk;
}

std::vector<AnonymizedRecord> anonymize_published(const ClusteringResult& clustering,
                                                  const RecordMap& records, const Taxonomy& tax,
                                                  double threshold) {
  std::vector<AnonymizedRecord> all;
  for (const Cluster& c : clustering.clusters) {
    if (c.suppressed) continue;
    auto recs = anonymize_cluster(c, records, tax, threshold);
    all.insert(all.end(), std::make_move_iterator(recs.begin()),
               std::make_move_iterator(recs.end()));
  }
  return all;
}

ordered_json config_json(const PipelineConfig& cfg) {
  ordered_json j;
  j["input"] = cfg.input.string();
  j["format"] = std::string(log_format_name(cfg.format));
  j["taxonomy"] = cfg.taxonomy.string();
  j["stopwords"] = cfg.stopwords ? ordered_json(cfg.stopwords->string()) : ordered_json(nullptr);
  j["k"] = cfg.k;
  j["threshold"] = round_g6(cfg.threshold);
  j["suppress_small"] = cfg.suppress_small;
  j["out"] = cfg.out_dir.string();
  j["threads"] = cfg.threads;
  return j;
}

ordered_json clusters_json(const ClusteringResult& clustering) {
  ordered_json arr = ordered_json::array();
  for (const Cluster& c : clustering.clusters) {
    ordered_json jc;
    jc["cluster_id"] = c.cluster_id;
    jc["centroid_id"] = c.centroid_id;
    jc["members"] = c.members;
    jc["suppressed"] = c.suppressed;
    if (c.seed_pair) {
      jc["seed_pair"] = ordered_json::array({c.seed_pair->first, c.seed_pair->second});
    } else {
      jc["seed_pair"] = nullptr;
    }
    arr.push_back(std::move(jc));
  }
  return arr;
}

std::string anonymized_tsv(std::span<const AnonymizedRecord> anonymized) {
  std::string out;
  for (const AnonymizedRecord& rec : anonymized) {
    out += std::to_string(rec.record_id);
    out += '\t';
    out += std::to_string(rec.cluster_id);
    out += '\t';
    for (std::size_t i = 0; i < rec.output_attributes.size(); ++i) {
      if (i != 0) out += ' ';
      out += rec.output_attributes[i].surface;
    }
    out += '\n';
  }
  return out;
}

std::string metrics_csv(const MetricsReport& report) {
  std::string out = "cluster_id,size,cohesion,sse_contribution\n";
  for (const ClusterMetrics& cm : report.per_cluster) {
    out += std::to_string(cm.cluster_id);
    out += ',';
    out += std::to_string(cm.size);
    out += ',';
    if (cm.cohesion) out += format_g6(*cm.cohesion);
    out += ',';
    out += format_g6(cm.sse_contribution);
    out += '\n';
  }
  return out;
}

ordered_json summary_json(const PipelineConfig& cfg, const Stage& stage,
                          const ClusteringResult& clustering, const MetricsReport& report,
                          bool pipeline_ran) {
  std::size_t published = 0;
  std::size_t suppressed_clusters = 0;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  double mean_size = 0.0;
  for (const Cluster& c : clustering.clusters) {
    if (c.suppressed) {
      ++suppressed_clusters;
      continue;
    }
    ++published;
    min_size = published == 1 ? c.members.size() : std::min(min_size, c.members.size());
    max_size = std::max(max_size, c.members.size());
    mean_size += static_cast<double>(c.members.size());
  }
  if (published > 0) mean_size /= static_cast<double>(published);

  ordered_json j;
  j["tool_version"] = std::string(kToolVersion);
  j["config"] = config_json(cfg);
  ordered_json records;
  records["data_lines"] = stage.log.data_lines;
  records["skipped"] = stage.log.skipped;
  records["admitted"] = stage.records.size();
  records["excluded"] = stage.excluded;
  records["suppressed"] = clustering.suppressed_records.size();
  j["records"] = std::move(records);
  j["pair_count"] = stage.pairs.size();
  j["cluster_count"] = published;
  j["suppressed_cluster_count"] = suppressed_clusters;
  j["min_cluster_size"] = min_size;
  j["max_cluster_size"] = max_size;
  j["mean_cluster_size"] = round_g6(mean_size);
  j["sse"] = round_g6(report.sse_total);
  j["sst"] = round_g6(report.sst_total);
  j["il_percent"] = round_g6(report.il_percent);
  if (pipeline_ran) {
    j["dataset_centroid_record"] = report.dataset_centroid_record;
  } else {
    j["dataset_centroid_record"] = nullptr;
  }
  return j;
}

bool write_file(const std::filesystem::path& path, std::string_view content, std::ostream& diag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    diag << "error: cannot write " << path.string() << "\n";
    return false;
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) {
    diag << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int cmd_run(const PipelineConfig& cfg, std::ostream& diag) {
  if (int rc = validate(cfg, true, diag); rc != kExitOk) return rc;
  Stage stage;
  if (int rc = build_stage(cfg, stage, diag, true); rc != kExitOk) return rc;

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    diag << "error: cannot create output directory: " << cfg.out_dir.string() << "\n";
    return kExitIo;
  }

  std::string empty_reason;
  if (stage.records.empty()) {
    empty_reason = "no admitted records";
  } else if (stage.records.size() < 2) {
    empty_reason = "only one admitted record";
  } else if (stage.pairs.empty()) {
    empty_reason = "no admitted pairs";
  }

  ClusteringResult clustering;
  std::vector<AnonymizedRecord> anonymized;
  MetricsReport report;
  bool ran = false;
  if (empty_reason.empty()) {
    DatasetCentroid centroid = dataset_centroid(stage.pairs);
    clustering = adaptive_mdav(stage.pairs, ClusteringConfig{cfg.k, cfg.suppress_small});
    anonymized = anonymize_published(clustering, stage.records, stage.taxonomy, cfg.threshold);
    report = compute_metrics(clustering, stage.records, anonymized, centroid, stage.taxonomy,
                             cfg.threshold);
    ran = true;
  }

  if (!write_file(cfg.out_dir / "clusters.json", dump(clusters_json(clustering)), diag) ||
      !write_file(cfg.out_dir / "anonymized.tsv", anonymized_tsv(anonymized), diag) ||
      !write_file(cfg.out_dir / "metrics.csv", metrics_csv(report), diag) ||
      !write_file(cfg.out_dir / "summary.json",
                  dump(summary_json(cfg, stage, clustering, report, ran)), diag)) {
    return kExitIo;
  }

  if (!empty_reason.empty()) {
    diag << "error: empty pipeline: " << empty_reason << "\n";
    return kExitEmpty;
  }
  std::size_t published = 0;
  for (const Cluster& c : clustering.clusters) {
    if (!c.suppressed) ++published;
  }
  if (published == 0) {
    diag << "error: empty pipeline: every cluster suppressed at k=" << cfg.k << "\n";
    return kExitEmpty;
  }
  if (report.il_percent > 100.0) {
    diag << "warning: information loss " << format_g6(report.il_percent)
         << "% exceeds 100% (SSE and SST use different reference records)\n";
  }
  return kExitOk;
}

int cmd_ingest(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (int rc = validate(cfg, false, diag); rc != kExitOk) return rc;
  Stage stage;
  if (int rc = build_stage(cfg, stage, diag, false); rc != kExitOk) return rc;

  for (const auto& [id, bundle] : stage.records) {
    out << id << '\t' << bundle.query.user_id << '\t';
    for (std::size_t i = 0; i < bundle.query.attributes.size(); ++i) {
      if (i != 0) out << ' ';
      out << bundle.query.attributes[i].surface;
    }
    out << '\n';
  }
  diag << "ingest: " << stage.records.size() << " admitted, " << stage.excluded << " excluded, "
       << stage.log.skipped << " skipped\n";
  if (stage.records.empty()) {
    diag << "error: empty pipeline: no admitted records\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_distance(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (int rc = validate(cfg, false, diag); rc != kExitOk) return rc;
  Stage stage;
  if (int rc = build_stage(cfg, stage, diag, true); rc != kExitOk) return rc;

  out << "left_id,right_id,n_left,n_right,n_union,n_intersect,sym_diff,delta\n";
  for (const PairDistance& p : stage.pairs) {
    out << p.left_id << ',' << p.right_id << ',' << p.n_left << ',' << p.n_right << ','
        << p.n_union << ',' << p.n_intersect << ',' << format_g6(p.sym_diff) << ','
        << format_g6(p.delta) << '\n';
  }
  if (stage.pairs.empty()) {
    diag << "error: empty pipeline: no admitted pairs\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_cluster(const PipelineConfig& cfg, std::ostream& diag) {
  if (int rc = validate(cfg, true, diag); rc != kExitOk) return rc;
  Stage stage;
  if (int rc = build_stage(cfg, stage, diag, true); rc != kExitOk) return rc;

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    diag << "error: cannot create output directory: " << cfg.out_dir.string() << "\n";
    return kExitIo;
  }

  ClusteringResult clustering;
  if (!stage.pairs.empty()) {
    clustering = adaptive_mdav(stage.pairs, ClusteringConfig{cfg.k, cfg.suppress_small});
  }
  if (!write_file(cfg.out_dir / "clusters.json", dump(clusters_json(clustering)), diag)) {
    return kExitIo;
  }
  if (stage.pairs.empty()) {
    diag << "error: empty pipeline: no admitted pairs\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_metrics(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (int rc = validate(cfg, true, diag); rc != kExitOk) return rc;
  Stage stage;
  if (int rc = build_stage(cfg, stage, diag, true); rc != kExitOk) return rc;

  std::filesystem::path clusters_path = cfg.out_dir / "clusters.json";
  std::ifstream in(clusters_path);
  if (!in) {
    diag << "error: cannot open " << clusters_path.string() << "\n";
    return kExitIo;
  }
  ClusteringResult clustering;
  try {
    ordered_json parsed = ordered_json::parse(in);
    for (const ordered_json& jc : parsed) {
      Cluster c;
      c.cluster_id = jc.at("cluster_id").get<std::uint32_t>();
      c.centroid_id = jc.at("centroid_id").get<RecordId>();
      c.members = jc.at("members").get<std::vector<RecordId>>();
      c.suppressed = jc.at("suppressed").get<bool>();
      if (!jc.at("seed_pair").is_null()) {
        c.seed_pair = {jc.at("seed_pair").at(0).get<RecordId>(),
                       jc.at("seed_pair").at(1).get<RecordId>()};
      }
      clustering.clusters.push_back(std::move(c));
    }
  } catch (const ordered_json::exception& e) {
    diag << "error: malformed " << clusters_path.string() << ": " << e.what() << "\n";
    return kExitIo;
  }
  for (const Cluster& c : clustering.clusters) {
    for (RecordId id : c.members) {
      if (!stage.records.count(id)) {
        diag << "error: clusters.json references record " << id
             << " absent from the current input\n";
        return kExitIo;
      }
    }
    if (c.suppressed) {
      clustering.suppressed_records.insert(clustering.suppressed_records.end(),
                                           c.members.begin(), c.members.end());
    }
  }
  std::sort(clustering.suppressed_records.begin(), clustering.suppressed_records.end());

  if (stage.pairs.empty()) {
    diag << "error: empty pipeline: no admitted pairs\n";
    return kExitEmpty;
  }

  DatasetCentroid centroid = dataset_centroid(stage.pairs);
  auto anonymized = anonymize_published(clustering, stage.records, stage.taxonomy, cfg.threshold);
  MetricsReport report = compute_metrics(clustering, stage.records, anonymized, centroid,
                                         stage.taxonomy, cfg.threshold);

  if (!write_file(cfg.out_dir / "metrics.csv", metrics_csv(report), diag)) {
    return kExitIo;
  }

  ordered_json j;
  j["sse"] = round_g6(report.sse_total);
  j["sst"] = round_g6(report.sst_total);
  j["il_percent"] = round_g6(report.il_percent);
  j["dataset_centroid_record"] = report.dataset_centroid_record;
  out << dump(j);
  if (report.il_percent > 100.0) {
    diag << "warning: information loss " << format_g6(report.il_percent)
         << "% exceeds 100% (SSE and SST use different reference records)\n";
  }
  return kExitOk;
}

int cmd_oracle(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (int rc = validate(cfg, false, diag); rc != kExitOk) return rc;
  Stage stage;
  if (int rc = build_stage(cfg, stage, diag, true); rc != kExitOk) return rc;

  if (stage.records.size() > oracle::kMaxRecords) {
    diag << "error: oracle accepts at most " << oracle::kMaxRecords << " admitted records, got "
         << stage.records.size() << "\n";
    return kExitConfig;
  }
  if (stage.pairs.empty()) {
    diag << "error: empty pipeline: no admitted pairs\n";
    return kExitEmpty;
  }

  ClusteringResult clustering = adaptive_mdav(stage.pairs, ClusteringConfig{cfg.k, cfg.suppress_small});
  auto anonymized = anonymize_published(clustering, stage.records, stage.taxonomy, cfg.threshold);
  double mdav_sse = sse(clustering.clusters, stage.records, anonymized, stage.taxonomy);

  oracle::PartitionCandidate best;
  try {
    best = oracle::optimal_sse(stage.records, stage.taxonomy, cfg.threshold, cfg.k);
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kExitEmpty;
  }

  ordered_json j;
  j["optimal_sse"] = round_g6(best.sse);
  j["optimal_blocks"] = best.blocks;
  j["mdav_sse"] = round_g6(mdav_sse);
  out << dump(j);
  return kExitOk;
}

}  // namespace semicro
