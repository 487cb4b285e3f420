#ifndef BICONN_BICON_HPP
#define BICONN_BICON_HPP

#include "errors.hpp"
#include "graph.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

namespace biconn {

// Right-hand side used in the third-eigenvalue certificate.
//  PaperBound:     eps * sqrt(n) * ||a~_i||_2, the closed-form constant as published.
//  ExactNormBound: eps * ||diag(a~_i) + a~_i 1^T||_F, the norm the gap inequality bounds.
enum class BoundMode { PaperBound, ExactNormBound };

inline std::string_view to_string(BoundMode m) { return m == BoundMode::PaperBound ? "paper" : "exact"; }

inline std::optional<BoundMode> parse_bound_mode(std::string_view s) {
	if (s == "paper") return BoundMode::PaperBound;
	if (s == "exact") return BoundMode::ExactNormBound;
	return std::nullopt;
}

struct SpectralTest {
	double lambda3 = 0.0;         // third smallest eigenvalue of the perturbed Laplacian
	double paper_bound = 0.0;
	double exact_norm_bound = 0.0;
	bool certified_paper = false;
	bool certified_exact = false;

	double bound(BoundMode m) const { return m == BoundMode::PaperBound ? paper_bound : exact_norm_bound; }
	bool certified(BoundMode m) const { return m == BoundMode::PaperBound ? certified_paper : certified_exact; }
};

struct NodeCertificate {
	NodeId node;
	bool locally_biconnected = false;
	std::optional<SpectralTest> spectral;  // absent when the local test already settled the node
	bool certified = false;                // spectral test passed in the selected mode
	std::optional<bool> oracle_is_articulation;

	bool settled() const { return locally_biconnected || certified; }
};

struct BiconnectivityReport {
	std::vector<NodeCertificate> nodes;  // ordered by NodeId
	bool graph_certified = false;
	std::optional<bool> oracle_biconnected;
	double epsilon = 0.0;
	BoundMode mode = BoundMode::ExactNormBound;

	std::size_t spectral_checks() const {
		return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](auto const& c) { return c.spectral.has_value(); }));
	}
};

namespace detail {

inline void require_connected(WeightedGraph const& g) {
	if (!is_connected_bfs(g)) throw PreconditionError("graph is not connected");
}

} // namespace detail

// True when {i} plus its neighbours induce a block. Since i is adjacent to every
// neighbour, that holds exactly when the neighbours alone induce a connected
// subgraph; connectivity is decided from that subgraph's algebraic connectivity.
inline bool locally_biconnected(WeightedGraph const& g, NodeId i, Tolerances const& tol = {}) {
	detail::require_node(g, i);
	if (g.size() < 2) throw DomainError("local biconnectivity requires n >= 2");
	detail::require_connected(g);
	auto const nbrs = g.neighbors(i);
	if (nbrs.size() == 1) return true;
	return is_connected_spectral(induced_subgraph(g, nbrs), tol.connectivity);
}

inline double paper_bound(WeightedGraph const& g, NodeId i, double epsilon) {
	double sq = 0.0;
	for (double a : neighbor_weight_vector(g, i)) sq += a * a;
	return epsilon * std::sqrt(static_cast<double>(g.size())) * std::sqrt(sq);
}

inline double exact_norm_bound(WeightedGraph const& g, NodeId i, double epsilon) {
	return epsilon * perturbation_term(g, i).frobenius_norm();
}

inline SpectralTest spectral_test(WeightedGraph const& g, NodeId i, PerturbationConfig const& cfg, Tolerances const& tol = {}) {
	detail::require_node(g, i);
	if (g.size() <= 2) throw DomainError("spectral certificate requires n > 2");
	detail::require_connected(g);

	SpectralTest t;
	t.lambda3 = symmetric_eigen(perturbed_laplacian(g, i, cfg), false, tol).eigenvalues[2];
	t.paper_bound = paper_bound(g, i, cfg.epsilon());
	t.exact_norm_bound = exact_norm_bound(g, i, cfg.epsilon());
	t.certified_paper = t.lambda3 > t.paper_bound + tol.strict_margin;
	t.certified_exact = t.lambda3 > t.exact_norm_bound + tol.strict_margin;
	return t;
}

inline NodeCertificate spectral_certificate(WeightedGraph const& g, NodeId i, PerturbationConfig const& cfg,
                                            BoundMode mode = BoundMode::ExactNormBound, Tolerances const& tol = {}) {
	NodeCertificate c;
	c.node = i;
	c.spectral = spectral_test(g, i, cfg, tol);
	c.locally_biconnected = locally_biconnected(g, i, tol);
	c.certified = c.spectral->certified(mode);
	return c;
}

inline std::vector<NodeId> articulation_points_oracle(WeightedGraph const& g);

// Local test on every node, spectral test only on the nodes it does not settle.
inline BiconnectivityReport certify_graph(WeightedGraph const& g, PerturbationConfig const& cfg,
                                          BoundMode mode = BoundMode::ExactNormBound, bool with_oracle = false,
                                          Tolerances const& tol = {}) {
	if (g.size() <= 2) throw DomainError("graph certification requires n > 2");
	detail::require_connected(g);

	BiconnectivityReport report;
	report.epsilon = cfg.epsilon();
	report.mode = mode;
	report.nodes.reserve(g.size());
	for (std::size_t k = 0; k < g.size(); ++k) {
		NodeCertificate c;
		c.node = NodeId{k};
		c.locally_biconnected = locally_biconnected(g, c.node, tol);
		if (!c.locally_biconnected) {
			c.spectral = spectral_test(g, c.node, cfg, tol);
			c.certified = c.spectral->certified(mode);
		}
		report.nodes.push_back(c);
	}
	report.graph_certified = std::all_of(report.nodes.begin(), report.nodes.end(), [](auto const& c) { return c.settled(); });

	if (with_oracle) {
		auto const cut = articulation_points_oracle(g);
		for (auto& c : report.nodes) c.oracle_is_articulation = std::binary_search(cut.begin(), cut.end(), c.node);
		report.oracle_biconnected = cut.empty();
	}
	return report;
}

// Cut vertices by a single depth-first low-link pass (iterative), sorted.
inline std::vector<NodeId> articulation_points_oracle(WeightedGraph const& g) {
	detail::require_connected(g);
	std::size_t const n = g.size();
	constexpr auto none = std::numeric_limits<std::size_t>::max();
	std::vector<std::size_t> disc(n, none), low(n, 0), parent(n, none), next_nbr(n, 0), children(n, 0);
	std::vector<bool> is_cut(n, false);
	std::size_t timer = 0;

	std::vector<std::size_t> stack{0};
	disc[0] = low[0] = timer++;
	while (!stack.empty()) {
		std::size_t const u = stack.back();
		if (next_nbr[u] < n) {
			std::size_t const v = next_nbr[u]++;
			if (g.weights()(u, v) <= 0.0) continue;
			if (disc[v] == none) {
				parent[v] = u;
				++children[u];
				disc[v] = low[v] = timer++;
				stack.push_back(v);
			} else if (v != parent[u]) {
				low[u] = std::min(low[u], disc[v]);
			}
			continue;
		}
		stack.pop_back();
		std::size_t const p = parent[u];
		if (p == none) continue;
		low[p] = std::min(low[p], low[u]);
		if (parent[p] != none && low[u] >= disc[p]) is_cut[p] = true;
	}
	if (children[0] > 1) is_cut[0] = true;

	std::vector<NodeId> out;
	for (std::size_t v = 0; v < n; ++v)
		if (is_cut[v]) out.push_back(NodeId{v});
	return out;
}

// Remove each node in turn and test what is left for connectivity.
inline std::vector<NodeId> articulation_points_brute_force(WeightedGraph const& g) {
	detail::require_connected(g);
	std::vector<NodeId> out;
	if (g.size() < 3) return out;
	for (std::size_t v = 0; v < g.size(); ++v)
		if (!is_connected_bfs(reduced_graph(g, NodeId{v}))) out.push_back(NodeId{v});
	return out;
}

// A single link (n = 2) has no two internally disjoint paths and is reported
// as not biconnected; a lone node likewise.
inline bool is_biconnected_oracle(WeightedGraph const& g) {
	detail::require_connected(g);
	if (g.size() < 3) return false;
	return articulation_points_oracle(g).empty();
}

// Two internally vertex-disjoint i-j paths, by unit-capacity max-flow on the
// vertex-split graph. A direct i-j link is one arc and so counts as one path.
inline bool doubly_connected_oracle(WeightedGraph const& g, NodeId i, NodeId j) {
	detail::require_node(g, i);
	detail::require_node(g, j);
	if (i == j) throw DomainError("doubly connected test needs two distinct nodes");
	detail::require_connected(g);

	std::size_t const n = g.size();
	std::size_t const m = 2 * n;  // v_in = 2v, v_out = 2v + 1
	Matrix cap(m, m);
	for (std::size_t v = 0; v < n; ++v)
		cap(2 * v, 2 * v + 1) = (v == i.index || v == j.index) ? 2.0 : 1.0;
	for (std::size_t u = 0; u < n; ++u)
		for (std::size_t v = 0; v < n; ++v)
			if (u != v && g.weights()(u, v) > 0.0) cap(2 * u + 1, 2 * v) = 1.0;

	std::size_t const source = 2 * i.index + 1, sink = 2 * j.index;
	int flow = 0;
	while (flow < 2) {
		constexpr auto none = std::numeric_limits<std::size_t>::max();
		std::vector<std::size_t> prev(m, none);
		prev[source] = source;
		std::queue<std::size_t> q;
		q.push(source);
		while (!q.empty() && prev[sink] == none) {
			std::size_t const u = q.front();
			q.pop();
			for (std::size_t v = 0; v < m; ++v)
				if (prev[v] == none && cap(u, v) > 0.0) {
					prev[v] = u;
					q.push(v);
				}
		}
		if (prev[sink] == none) break;
		for (std::size_t v = sink; v != source; v = prev[v]) {
			cap(prev[v], v) -= 1.0;
			cap(v, prev[v]) += 1.0;
		}
		++flow;
	}
	return flow >= 2;
}

} // namespace biconn

#endif
