#include "semicro/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace semicro {

namespace {

std::pair<RecordId, RecordId> key_of(const PairDistance& p) {
  return {p.left_id, p.right_id};
}

std::vector<RecordId> sorted_unique_members(std::span<const PairDistance> pairs) {
  std::vector<RecordId> ids;
  ids.reserve(pairs.size() * 2);
  for (const PairDistance& p : pairs) {
    ids.push_back(p.left_id);
    ids.push_back(p.right_id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool in_sorted(const std::vector<RecordId>& ids, RecordId id) {
  return std::binary_search(ids.begin(), ids.end(), id);
}

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

RecordId cluster_centroid(std::span<const RecordId> members,
                          std::span<const PairDistance> clustered_pairs) {
  if (members.empty()) {
    throw std::invalid_argument("cluster_centroid: empty member set");
  }
  RecordId best_id = 0;
  std::size_t best_count = 0;
  double best_delta = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (RecordId id : members) {
    std::size_t count = 0;
    double min_delta = std::numeric_limits<double>::infinity();
    for (const PairDistance& p : clustered_pairs) {
      if (p.left_id == id || p.right_id == id) {
        ++count;
        min_delta = std::min(min_delta, p.delta);
      }
    }
    bool better = !have_best || count > best_count ||
                  (count == best_count &&
                   (min_delta < best_delta || (min_delta == best_delta && id < best_id)));
    if (better) {
      have_best = true;
      best_id = id;
      best_count = count;
      best_delta = min_delta;
    }
  }
  return best_id;
}

ClusteringResult adaptive_mdav(std::span<const PairDistance> pairs, const ClusteringConfig& cfg) {
  if (pairs.empty()) {
    throw std::invalid_argument("adaptive_mdav: empty pair list");
  }
  if (cfg.k < 2) {
    throw std::invalid_argument("adaptive_mdav: k must be >= 2");
  }
  for (const PairDistance& p : pairs) {
    if (!std::isfinite(p.delta)) {
      throw std::invalid_argument("adaptive_mdav: non-finite pair delta");
    }
  }

  // Canonical pool order makes the whole run independent of input order.
  std::vector<PairDistance> pool(pairs.begin(), pairs.end());
  std::sort(pool.begin(), pool.end(), [](const PairDistance& a, const PairDistance& b) {
    return key_of(a) < key_of(b);
  });
  const std::vector<RecordId> all_paired = sorted_unique_members(pool);

  ClusteringResult result;
  std::uint32_t next_id = 1;
  std::uint32_t iteration = 0;

  auto internal_pairs = [&pool](const std::vector<RecordId>& members) {
    std::vector<PairDistance> out;
    for (const PairDistance& p : pool) {
      if (in_sorted(members, p.left_id) && in_sorted(members, p.right_id)) out.push_back(p);
    }
    return out;
  };

  auto emit_cluster = [&](std::vector<RecordId> members, const std::vector<PairDistance>& cpairs,
                          std::optional<std::pair<RecordId, RecordId>> seed) {
    Cluster c;
    c.cluster_id = next_id++;
    c.centroid_id = cluster_centroid(members, cpairs);
    c.members = std::move(members);
    c.seed_pair = seed;
    c.suppressed = cfg.suppress_small && c.members.size() < cfg.k;
    result.clusters.push_back(std::move(c));
  };

  while (pool.size() > cfg.k) {
    ++iteration;
    DatasetCentroid mu = dataset_centroid(pool);

    // Seed 1: farthest pair from the pool mean. The pool is id-sorted, so
    // a strict '>' keeps the lowest-id pair on ties.
    std::size_t s1 = 0;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      double gap = std::abs(pool[i].delta - mu.mean_delta);
      if (gap > best_gap) {
        best_gap = gap;
        s1 = i;
      }
    }
    // Seed 2: farthest pair from seed 1. Coincides with seed 1 exactly when
    // every remaining delta is equal.
    std::size_t s2 = 0;
    double best_gap2 = -1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      double gap = std::abs(pool[i].delta - pool[s1].delta);
      if (gap > best_gap2) {
        best_gap2 = gap;
        s2 = i;
      }
    }

    IterationTrace tr;
    tr.iteration = iteration;
    tr.mean_delta = mu.mean_delta;
    tr.centroid_pair = {mu.left_id, mu.right_id};
    tr.far_pair = key_of(pool[s1]);
    tr.farthest_pair = key_of(pool[s2]);
    tr.single_seed = s1 == s2;

    if (s1 == s2) {
      // Degenerate single-value axis: everything joins the one seed.
      tr.assignments.reserve(pool.size());
      for (const PairDistance& p : pool) tr.assignments.emplace_back(key_of(p), 0);
      std::vector<RecordId> members = sorted_unique_members(pool);
      std::vector<PairDistance> cpairs = pool;
      emit_cluster(std::move(members), cpairs, key_of(pool[s1]));
      pool.clear();
      result.trace.push_back(std::move(tr));
      continue;
    }

    // The lower-delta seed holds the more similar records and builds first.
    std::size_t first = pool[s1].delta < pool[s2].delta ? s1 : s2;
    std::size_t second = first == s1 ? s2 : s1;
    double delta_first = pool[first].delta;
    double delta_second = pool[second].delta;

    // A pair joins the nearer seed only when that seed is strictly nearer
    // on the delta axis than the current pool mean; everything else stays
    // for a later round. Seeds always anchor their own cluster.
    std::vector<int> assign(pool.size(), -1);
    assign[first] = 0;
    assign[second] = 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == first || i == second) continue;
      double gap_first = std::abs(pool[i].delta - delta_first);
      double gap_second = std::abs(pool[i].delta - delta_second);
      double gap_mean = std::abs(pool[i].delta - mu.mean_delta);
      int seed = gap_first <= gap_second ? 0 : 1;
      if (std::min(gap_first, gap_second) < gap_mean) assign[i] = seed;
    }
    tr.assignments.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      tr.assignments.emplace_back(key_of(pool[i]), assign[i]);
    }

    std::vector<RecordId> members_first;
    std::vector<RecordId> members_second;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (assign[i] == 0) {
        members_first.push_back(pool[i].left_id);
        members_first.push_back(pool[i].right_id);
      } else if (assign[i] == 1) {
        members_second.push_back(pool[i].left_id);
        members_second.push_back(pool[i].right_id);
      }
    }
    std::sort(members_first.begin(), members_first.end());
    members_first.erase(std::unique(members_first.begin(), members_first.end()),
                        members_first.end());
    std::sort(members_second.begin(), members_second.end());
    members_second.erase(std::unique(members_second.begin(), members_second.end()),
                         members_second.end());
    // First-built cluster claims contested records.
    std::erase_if(members_second,
                  [&](RecordId id) { return in_sorted(members_first, id); });

    std::vector<RecordId> clustered = members_first;
    clustered.insert(clustered.end(), members_second.begin(), members_second.end());
    std::sort(clustered.begin(), clustered.end());

    emit_cluster(members_first, internal_pairs(members_first), key_of(pool[first]));
    if (!members_second.empty()) {
      emit_cluster(members_second, internal_pairs(members_second), key_of(pool[second]));
    }

    std::erase_if(pool, [&](const PairDistance& p) {
      return in_sorted(clustered, p.left_id) || in_sorted(clustered, p.right_id);
    });
    result.trace.push_back(std::move(tr));
  }

  if (!pool.empty()) {
    std::vector<RecordId> members = sorted_unique_members(pool);
    emit_cluster(std::move(members), pool, std::nullopt);
    pool.clear();
  }

  // Never-published records: members of suppressed clusters, plus records
  // orphaned when every pair containing them was dropped because the
  // partner got clustered first.
  std::vector<RecordId> clustered_anywhere;
  for (const Cluster& c : result.clusters) {
    clustered_anywhere.insert(clustered_anywhere.end(), c.members.begin(), c.members.end());
    if (c.suppressed) {
      result.suppressed_records.insert(result.suppressed_records.end(), c.members.begin(),
                                       c.members.end());
    }
  }
  std::sort(clustered_anywhere.begin(), clustered_anywhere.end());
  for (RecordId id : all_paired) {
    if (!in_sorted(clustered_anywhere, id)) result.suppressed_records.push_back(id);
  }
  std::sort(result.suppressed_records.begin(), result.suppressed_records.end());
  return result;
}

std::string ClusteringResult::trace_text() const {
  std::string out;
  for (const IterationTrace& tr : trace) {
    out += "iteration " + std::to_string(tr.iteration) + " mean=";
    append_double(out, tr.mean_delta);
    out += " centroid=(" + std::to_string(tr.centroid_pair.first) + "," +
           std::to_string(tr.centroid_pair.second) + ")";
    out += " far=(" + std::to_string(tr.far_pair.first) + "," +
           std::to_string(tr.far_pair.second) + ")";
    out += " farthest=(" + std::to_string(tr.farthest_pair.first) + "," +
           std::to_string(tr.farthest_pair.second) + ")";
    if (tr.single_seed) out += " single-seed";
    out += "\n";
    for (const auto& [key, seed] : tr.assignments) {
      out += "  (" + std::to_string(key.first) + "," + std::to_string(key.second) +
             ") -> " + std::to_string(seed) + "\n";
    }
  }
  for (const Cluster& c : clusters) {
    out += "cluster " + std::to_string(c.cluster_id) + " centroid=" +
           std::to_string(c.centroid_id) + " members=[";
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      if (i != 0) out += ",";
      out += std::to_string(c.members[i]);
    }
    out += "]";
    if (c.seed_pair) {
      out += " seed=(" + std::to_string(c.seed_pair->first) + "," +
             std::to_string(c.seed_pair->second) + ")";
    }
    if (c.suppressed) out += " suppressed";
    out += "\n";
  }
  return out;
}

}  // namespace semicro
