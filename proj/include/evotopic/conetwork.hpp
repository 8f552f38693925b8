#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evotopic/chronology.hpp"
#include "evotopic/corpus.hpp"

namespace evotopic {

/// Undirected country co-authorship graph. Edge weight counts the papers
/// shared by the two countries.
class CountryGraph {
 public:
  using Edge = std::pair<std::string, std::string>;  // first < second

  CountryGraph() = default;
  explicit CountryGraph(std::optional<YearRange> window) : window_(window) {}

  void add_node(const std::string& label);
  /// Adds both endpoints. Throws std::invalid_argument on a self-loop or
  /// non-positive weight.
  void add_edge(const std::string& a, const std::string& b, std::int64_t weight = 1);

  const std::set<std::string>& nodes() const noexcept { return nodes_; }
  const std::map<Edge, std::int64_t>& edges() const noexcept { return edges_; }
  std::int64_t weight(const std::string& a, const std::string& b) const;
  const std::optional<YearRange>& window() const noexcept { return window_; }

  friend bool operator==(const CountryGraph& a, const CountryGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::set<std::string> nodes_;
  std::map<Edge, std::int64_t> edges_;
  std::optional<YearRange> window_;
};

enum class ClusteringVariant {
  local_average,  ///< mean local coefficient over nodes of degree >= 2
  transitivity,   ///< 3 * triangles / connected triples
};

struct MetricsOptions {
  ClusteringVariant clustering = ClusteringVariant::local_average;
  bool mean_degree_includes_isolates = true;
};

struct NetworkMetrics {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double mean_degree = 0.0;
  std::map<std::size_t, std::size_t> degree_distribution;  ///< degree -> node count
  double clustering = 0.0;
  /// Sorted by size descending, then by smallest member. Members sorted.
  std::vector<std::vector<std::string>> components;
  double giant_fraction = 0.0;
  double avg_path = 0.0;  ///< 0 when the giant component has one node
  std::size_t diameter = 0;
  std::size_t isolates = 0;

  bool empty_graph = false;
  bool clustering_undefined = false;  ///< no node qualifies; clustering reported as 0
};

/// Graph over records with year inside the window (all records when no window).
CountryGraph build_network(const Corpus& corpus, std::optional<YearRange> window = std::nullopt);

NetworkMetrics network_metrics(const CountryGraph& graph, const MetricsOptions& options = {});

struct WindowMetrics {
  YearRange window;
  NetworkMetrics metrics;
};

/// Windows [s, s + window_len - 1] for s = first year, first + step, ...
/// while s <= last year of the corpus.
std::vector<WindowMetrics> windowed_metrics(const Corpus& corpus, int window_len, int step,
                                            const MetricsOptions& options = {});

/// Pajek .net text; nodes numbered from 1 in label order.
std::string export_pajek(const CountryGraph& graph, bool weighted = true);

/// Reads the subset of Pajek emitted by export_pajek. Edges without a
/// weight column get weight 1. Throws InputError on malformed text.
CountryGraph parse_pajek(std::string_view text);

std::string to_json(const NetworkMetrics& metrics);
std::string to_json(const std::vector<WindowMetrics>& windows);

}  // namespace evotopic
