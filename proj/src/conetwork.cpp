#include "evotopic/conetwork.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "evotopic/error.hpp"
#include "evotopic/text.hpp"

namespace evotopic {

void CountryGraph::add_node(const std::string& label) { nodes_.insert(label); }

void CountryGraph::add_edge(const std::string& a, const std::string& b, std::int64_t weight) {
  if (a == b) throw std::invalid_argument("self-loop on '" + a + "'");
  if (weight < 1) throw std::invalid_argument("edge weight must be >= 1");
  nodes_.insert(a);
  nodes_.insert(b);
  edges_[a < b ? Edge{a, b} : Edge{b, a}] += weight;
}

std::int64_t CountryGraph::weight(const std::string& a, const std::string& b) const {
  auto it = edges_.find(a < b ? Edge{a, b} : Edge{b, a});
  return it == edges_.end() ? 0 : it->second;
}

CountryGraph build_network(const Corpus& corpus, std::optional<YearRange> window) {
  CountryGraph g(window);
  for (const auto& r : corpus) {
    if (window && !window->contains(r.year)) continue;
    // Corpus guarantees r.countries is already deduplicated.
    const auto& cs = r.countries;
    for (const auto& c : cs) g.add_node(c);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) g.add_edge(cs[i], cs[j]);
    }
  }
  return g;
}

namespace {

struct Indexed {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> adj;  // sorted neighbour lists
};

Indexed index_graph(const CountryGraph& g) {
  Indexed ix;
  ix.labels.assign(g.nodes().begin(), g.nodes().end());
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < ix.labels.size(); ++i) id[ix.labels[i]] = i;
  ix.adj.resize(ix.labels.size());
  for (const auto& [e, w] : g.edges()) {
    const auto a = id.at(e.first), b = id.at(e.second);
    ix.adj[a].push_back(b);
    ix.adj[b].push_back(a);
  }
  for (auto& n : ix.adj) std::sort(n.begin(), n.end());
  return ix;
}

bool adjacent(const Indexed& ix, std::size_t a, std::size_t b) {
  return std::binary_search(ix.adj[a].begin(), ix.adj[a].end(), b);
}

/// Number of edges among the neighbours of v.
std::size_t neighbour_links(const Indexed& ix, std::size_t v) {
  const auto& nb = ix.adj[v];
  std::size_t links = 0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (adjacent(ix, nb[i], nb[j])) ++links;
    }
  }
  return links;
}

std::vector<std::size_t> bfs_distances(const Indexed& ix, std::size_t src) {
  constexpr auto unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(ix.labels.size(), unreached);
  std::deque<std::size_t> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto v : ix.adj[u]) {
      if (dist[v] == unreached) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

NetworkMetrics network_metrics(const CountryGraph& graph, const MetricsOptions& options) {
  NetworkMetrics m;
  const Indexed ix = index_graph(graph);
  const std::size_t n = ix.labels.size();
  m.n_nodes = n;
  m.n_edges = graph.edges().size();
  if (n == 0) {
    m.empty_graph = true;
    m.clustering_undefined = true;
    return m;
  }

  for (std::size_t v = 0; v < n; ++v) {
    const auto d = ix.adj[v].size();
    ++m.degree_distribution[d];
    if (d == 0) ++m.isolates;
  }
  const std::size_t degree_nodes = options.mean_degree_includes_isolates ? n : n - m.isolates;
  m.mean_degree = degree_nodes == 0 ? 0.0
                                    : 2.0 * static_cast<double>(m.n_edges) / static_cast<double>(degree_nodes);

  // Clustering
  double local_sum = 0.0;
  std::size_t local_count = 0;
  std::size_t closed = 0;   // sum of neighbour links = 3 * triangles
  std::size_t triples = 0;  // connected triples centred on each node
  for (std::size_t v = 0; v < n; ++v) {
    const auto d = ix.adj[v].size();
    if (d < 2) continue;
    const auto links = neighbour_links(ix, v);
    const auto pairs = d * (d - 1) / 2;
    local_sum += static_cast<double>(links) / static_cast<double>(pairs);
    ++local_count;
    closed += links;
    triples += pairs;
  }
  if (local_count == 0) {
    m.clustering_undefined = true;
  } else if (options.clustering == ClusteringVariant::local_average) {
    m.clustering = local_sum / static_cast<double>(local_count);
  } else {
    m.clustering = static_cast<double>(closed) / static_cast<double>(triples);
  }

  // Components
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (auto v : ix.adj[comp[head]]) {
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());  // index order == label order
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  for (const auto& comp : comps) {
    std::vector<std::string> labels;
    labels.reserve(comp.size());
    for (auto v : comp) labels.push_back(ix.labels[v]);
    m.components.push_back(std::move(labels));
  }
  const auto& giant = comps.front();
  m.giant_fraction = static_cast<double>(giant.size()) / static_cast<double>(n);

  // Unweighted shortest paths inside the giant component
  if (giant.size() >= 2) {
    std::uint64_t sum = 0;
    std::size_t diameter = 0;
    for (auto src : giant) {
      const auto dist = bfs_distances(ix, src);
      for (auto dst : giant) {
        if (dst <= src) continue;
        sum += dist[dst];
        diameter = std::max(diameter, dist[dst]);
      }
    }
    const double pairs = static_cast<double>(giant.size()) * static_cast<double>(giant.size() - 1) / 2.0;
    m.avg_path = static_cast<double>(sum) / pairs;
    m.diameter = diameter;
  }
  return m;
}

std::vector<WindowMetrics> windowed_metrics(const Corpus& corpus, int window_len, int step,
                                            const MetricsOptions& options) {
  if (window_len < 1) throw std::invalid_argument("window_len must be >= 1");
  if (step < 1) throw std::invalid_argument("step must be >= 1");
  std::vector<WindowMetrics> out;
  const auto span = corpus.year_span();
  if (!span) return out;
  for (int s = span->first; s <= span->second; s += step) {
    const YearRange w{s, s + window_len - 1};
    out.push_back({w, network_metrics(build_network(corpus, w), options)});
  }
  return out;
}

namespace {
std::string quote_label(const std::string& label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}
}  // namespace

std::string export_pajek(const CountryGraph& graph, bool weighted) {
  std::ostringstream out;
  std::map<std::string, std::size_t> id;
  out << "*Vertices " << graph.nodes().size() << '\n';
  std::size_t i = 0;
  for (const auto& label : graph.nodes()) {
    id[label] = ++i;
    out << i << ' ' << quote_label(label) << '\n';
  }
  out << "*Edges\n";
  // Node ids follow label order, so map order over (a < b) pairs is already
  // sorted by (i, j) with i < j.
  for (const auto& [e, w] : graph.edges()) {
    out << id.at(e.first) << ' ' << id.at(e.second);
    if (weighted) out << ' ' << w;
    out << '\n';
  }
  return out.str();
}

CountryGraph parse_pajek(std::string_view input) {
  auto fail = [](std::size_t line, const std::string& why) -> InputError {
    return InputError("pajek line " + std::to_string(line) + ": " + why);
  };
  std::vector<std::string> lines = text::split(input, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }

  std::size_t pos = 0;
  auto parse_uint = [&](std::string_view s, std::size_t line) -> std::size_t {
    s = text::trim(s);
    if (s.empty()) throw fail(line, "expected a number");
    std::size_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw fail(line, "expected a number, got '" + std::string(s) + "'");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };

  if (lines.empty()) throw fail(1, "missing *Vertices header");
  const auto header = text::trim(lines[0]);
  const auto header_folded = text::fold_case(header);
  if (header_folded.rfind("*vertices", 0) != 0) throw fail(1, "missing *Vertices header");
  const std::size_t n = parse_uint(header.substr(9), 1);
  pos = 1;

  std::vector<std::string> labels(n + 1);
  CountryGraph g;
  for (std::size_t k = 1; k <= n; ++k, ++pos) {
    if (pos >= lines.size()) throw fail(pos + 1, "expected vertex line");
    const std::string_view l = lines[pos];
    const auto sp = l.find(' ');
    if (sp == std::string_view::npos) throw fail(pos + 1, "malformed vertex line");
    const auto idx = parse_uint(l.substr(0, sp), pos + 1);
    if (idx != k) throw fail(pos + 1, "vertex ids must be consecutive from 1");
    auto rest = text::trim(l.substr(sp + 1));
    if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') {
      throw fail(pos + 1, "vertex label must be double-quoted");
    }
    std::string label;
    rest = rest.substr(1, rest.size() - 2);
    for (std::size_t c = 0; c < rest.size(); ++c) {
      if (rest[c] == '"') {
        if (c + 1 >= rest.size() || rest[c + 1] != '"') throw fail(pos + 1, "unescaped quote in label");
        ++c;
      }
      label.push_back(rest[c]);
    }
    labels[k] = label;
    g.add_node(label);
  }
  if (pos >= lines.size() || text::fold_case(text::trim(lines[pos])) != "*edges") {
    throw fail(pos + 1, "missing *Edges header");
  }
  ++pos;
  for (; pos < lines.size(); ++pos) {
    if (text::trim(lines[pos]).empty()) continue;
    std::vector<std::string> cols;
    for (auto& c : text::split(text::trim(lines[pos]), ' ')) {
      if (!c.empty()) cols.push_back(c);
    }
    if (cols.size() != 2 && cols.size() != 3) throw fail(pos + 1, "edge line needs 2 or 3 columns");
    const auto a = parse_uint(cols[0], pos + 1), b = parse_uint(cols[1], pos + 1);
    if (a < 1 || a > n || b < 1 || b > n) throw fail(pos + 1, "edge endpoint out of range");
    const std::int64_t w = cols.size() == 3 ? static_cast<std::int64_t>(parse_uint(cols[2], pos + 1)) : 1;
    try {
      g.add_edge(labels[a], labels[b], w);
    } catch (const std::invalid_argument& e) {
      throw fail(pos + 1, e.what());
    }
  }
  return g;
}

namespace {
nlohmann::json metrics_json(const NetworkMetrics& m) {
  nlohmann::json dist = nlohmann::json::object();
  for (auto [d, c] : m.degree_distribution) dist[std::to_string(d)] = c;
  return {{"n_nodes", m.n_nodes},
          {"n_edges", m.n_edges},
          {"mean_degree", m.mean_degree},
          {"degree_distribution", dist},
          {"clustering", m.clustering},
          {"components", m.components},
          {"giant_fraction", m.giant_fraction},
          {"avg_path", m.avg_path},
          {"diameter", m.diameter},
          {"isolates", m.isolates},
          {"empty_graph", m.empty_graph},
          {"clustering_undefined", m.clustering_undefined}};
}
}  // namespace

std::string to_json(const NetworkMetrics& metrics) { return metrics_json(metrics).dump(2) + "\n"; }

std::string to_json(const std::vector<WindowMetrics>& windows) {
  auto arr = nlohmann::json::array();
  for (const auto& w : windows) {
    arr.push_back({{"window", w.window.to_string()}, {"metrics", metrics_json(w.metrics)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace evotopic
