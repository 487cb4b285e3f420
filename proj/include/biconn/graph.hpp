#ifndef BICONN_GRAPH_HPP
#define BICONN_GRAPH_HPP

#include "errors.hpp"
#include "matrix.hpp"

#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace biconn {

struct NodeId {
	std::size_t index = 0;
	friend auto operator<=>(NodeId, NodeId) = default;
};

struct Point2 {
	double x = 0.0;
	double y = 0.0;
	friend bool operator==(Point2, Point2) = default;
};

inline double squared_distance(Point2 a, Point2 b) {
	double const dx = a.x - b.x, dy = a.y - b.y;
	return dx * dx + dy * dy;
}

struct Edge {
	NodeId i;
	NodeId j;
	double weight = 1.0;
};

// Scale factor applied to every link incident to the perturbed node.
class PerturbationConfig {
public:
	explicit PerturbationConfig(double epsilon) : epsilon_(epsilon) {
		if (!(epsilon > 0.0) || !std::isfinite(epsilon))
			throw DomainError("perturbation epsilon must be a positive finite number, got " + std::to_string(epsilon));
	}
	double epsilon() const noexcept { return epsilon_; }

private:
	double epsilon_;
};

// R-disk link model: weight exp(-d^2 / (2 sigma)) for d <= R, no link beyond R.
class ProximityModel {
public:
	ProximityModel(double radius, double sigma) : radius_(radius), sigma_(sigma) {
		if (!(radius > 0.0) || !(sigma > 0.0))
			throw DomainError("proximity model requires radius > 0 and sigma > 0");
	}
	double radius() const noexcept { return radius_; }
	double sigma() const noexcept { return sigma_; }

	double weight(Point2 a, Point2 b) const {
		double const d2 = squared_distance(a, b);
		if (std::sqrt(d2) > radius_) return 0.0;
		return std::exp(-d2 / (2.0 * sigma_));
	}

private:
	double radius_;
	double sigma_;
};

// Undirected graph with nonnegative symmetric link weights and zero diagonal.
// Immutable after construction.
class WeightedGraph {
public:
	// Validates symmetry, zero diagonal and nonnegativity exactly.
	explicit WeightedGraph(Matrix weights, std::optional<std::vector<Point2>> positions = std::nullopt)
		: weights_(std::move(weights)), positions_(std::move(positions)) {
		if (!weights_.is_square() || weights_.rows() == 0)
			throw GraphConstructionError("weight matrix must be square with n >= 1");
		std::size_t const n = weights_.rows();
		for (std::size_t i = 0; i < n; ++i) {
			if (weights_(i, i) != 0.0)
				throw GraphConstructionError("self-loop at node " + std::to_string(i));
			for (std::size_t j = 0; j < n; ++j) {
				double const w = weights_(i, j);
				if (!std::isfinite(w) || w < 0.0)
					throw GraphConstructionError("weight (" + std::to_string(i) + "," + std::to_string(j) + ") must be finite and nonnegative");
				if (w != weights_(j, i))
					throw GraphConstructionError("weight matrix not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
			}
		}
		if (positions_ && positions_->size() != n)
			throw GraphConstructionError("positions list has " + std::to_string(positions_->size()) + " entries, expected " + std::to_string(n));
	}

	std::size_t size() const noexcept { return weights_.rows(); }
	Matrix const& weights() const noexcept { return weights_; }
	double weight(NodeId i, NodeId j) const { return weights_(i.index, j.index); }
	bool has_edge(NodeId i, NodeId j) const { return weight(i, j) > 0.0; }
	std::optional<std::vector<Point2>> const& positions() const noexcept { return positions_; }

	bool contains(NodeId i) const noexcept { return i.index < size(); }

	std::vector<NodeId> neighbors(NodeId i) const {
		std::vector<NodeId> out;
		for (std::size_t j = 0; j < size(); ++j)
			if (weights_(i.index, j) > 0.0) out.push_back(NodeId{j});
		return out;
	}

	// Edges with i < j, ordered lexicographically.
	std::vector<Edge> edges() const {
		std::vector<Edge> out;
		for (std::size_t i = 0; i < size(); ++i)
			for (std::size_t j = i + 1; j < size(); ++j)
				if (weights_(i, j) > 0.0) out.push_back({NodeId{i}, NodeId{j}, weights_(i, j)});
		return out;
	}

	friend bool operator==(WeightedGraph const&, WeightedGraph const&) = default;

private:
	Matrix weights_;
	std::optional<std::vector<Point2>> positions_;
};

namespace detail {

inline void require_node(WeightedGraph const& g, NodeId i) {
	if (!g.contains(i))
		throw DomainError("node " + std::to_string(i.index) + " out of range for graph of size " + std::to_string(g.size()));
}

inline void require_reducible(WeightedGraph const& g, char const* what) {
	if (g.size() < 2) throw DomainError(std::string(what) + " requires n >= 2");
}

inline std::string edge_str(Edge const& e) {
	return "(" + std::to_string(e.i.index) + ", " + std::to_string(e.j.index) + ", " + std::to_string(e.weight) + ")";
}

} // namespace detail

inline WeightedGraph from_edge_list(std::size_t n, std::span<Edge const> edges,
                                    std::optional<std::vector<Point2>> positions = std::nullopt) {
	if (n == 0) throw GraphConstructionError("graph needs at least one node");
	Matrix w(n, n);
	for (Edge const& e : edges) {
		if (e.i.index >= n || e.j.index >= n)
			throw GraphConstructionError("edge " + detail::edge_str(e) + ": index out of range for n = " + std::to_string(n));
		if (e.i == e.j)
			throw GraphConstructionError("edge " + detail::edge_str(e) + ": self-loop");
		if (!(e.weight > 0.0) || !std::isfinite(e.weight))
			throw GraphConstructionError("edge " + detail::edge_str(e) + ": weight must be positive and finite");
		if (w(e.i.index, e.j.index) != 0.0)
			throw GraphConstructionError("edge " + detail::edge_str(e) + ": duplicate edge");
		w(e.i.index, e.j.index) = e.weight;
		w(e.j.index, e.i.index) = e.weight;
	}
	return WeightedGraph(std::move(w), std::move(positions));
}

inline WeightedGraph from_edge_list(std::size_t n, std::initializer_list<Edge> edges) {
	return from_edge_list(n, std::span<Edge const>(edges.begin(), edges.size()));
}

inline WeightedGraph proximity_graph(std::vector<Point2> positions, ProximityModel const& model) {
	std::size_t const n = positions.size();
	if (n == 0) throw DomainError("proximity graph needs at least one position");
	Matrix w(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j) {
			double const a = model.weight(positions[i], positions[j]);
			w(i, j) = a;
			w(j, i) = a;
		}
	return WeightedGraph(std::move(w), std::move(positions));
}

inline Matrix laplacian(WeightedGraph const& g) {
	std::size_t const n = g.size();
	Matrix const& a = g.weights();
	Matrix l(n, n);
	for (std::size_t i = 0; i < n; ++i) {
		double degree = 0.0;
		for (std::size_t j = 0; j < n; ++j) {
			if (j == i) continue;
			degree += a(i, j);
			l(i, j) = -a(i, j);
		}
		l(i, i) = degree;
	}
	return l;
}

// Row i of the adjacency matrix with entry i removed.
inline std::vector<double> neighbor_weight_vector(WeightedGraph const& g, NodeId i) {
	detail::require_reducible(g, "neighbor weight vector");
	detail::require_node(g, i);
	std::vector<double> out;
	out.reserve(g.size() - 1);
	for (std::size_t j = 0; j < g.size(); ++j)
		if (j != i.index) out.push_back(g.weights()(i.index, j));
	return out;
}

// Graph with node i and its incident links deleted. Remaining nodes keep their
// relative order; original index j maps to j - (j > i).
inline WeightedGraph reduced_graph(WeightedGraph const& g, NodeId i) {
	detail::require_reducible(g, "node removal");
	detail::require_node(g, i);
	std::size_t const n = g.size();
	Matrix w(n - 1, n - 1);
	for (std::size_t r = 0, rr = 0; r < n; ++r) {
		if (r == i.index) continue;
		for (std::size_t c = 0, cc = 0; c < n; ++c) {
			if (c == i.index) continue;
			w(rr, cc++) = g.weights()(r, c);
		}
		++rr;
	}
	std::optional<std::vector<Point2>> pos;
	if (g.positions()) {
		pos.emplace();
		for (std::size_t r = 0; r < n; ++r)
			if (r != i.index) pos->push_back((*g.positions())[r]);
	}
	return WeightedGraph(std::move(w), std::move(pos));
}

// Subgraph induced on `nodes` (kept in the given order).
inline WeightedGraph induced_subgraph(WeightedGraph const& g, std::span<NodeId const> nodes) {
	std::size_t const k = nodes.size();
	if (k == 0) throw DomainError("induced subgraph needs at least one node");
	Matrix w(k, k);
	for (std::size_t r = 0; r < k; ++r) {
		detail::require_node(g, nodes[r]);
		for (std::size_t c = 0; c < k; ++c)
			if (r != c) w(r, c) = g.weight(nodes[r], nodes[c]);
	}
	return WeightedGraph(std::move(w));
}

inline NodeId original_index(NodeId removed, NodeId compacted) {
	return NodeId{compacted.index + (compacted.index >= removed.index ? 1 : 0)};
}

// Laplacian after scaling every link incident to i by epsilon.
inline Matrix perturbed_laplacian(WeightedGraph const& g, NodeId i, PerturbationConfig const& cfg) {
	detail::require_reducible(g, "perturbed Laplacian");
	detail::require_node(g, i);
	std::size_t const n = g.size();
	Matrix a = g.weights();
	for (std::size_t j = 0; j < n; ++j) {
		a(i.index, j) *= cfg.epsilon();
		a(j, i.index) *= cfg.epsilon();
	}
	return laplacian(WeightedGraph(std::move(a)));
}

// diag(a~_i) + a~_i 1^T, the non-symmetric term separating the intermediate
// matrix from the reduced Laplacian (before scaling by epsilon).
inline Matrix perturbation_term(WeightedGraph const& g, NodeId i) {
	auto const a = neighbor_weight_vector(g, i);
	std::vector<double> const ones(a.size(), 1.0);
	return Matrix::diagonal(a) + Matrix::outer(a, ones);
}

// L^{R_i} + eps diag(a~_i) + eps a~_i 1^T. Its spectrum equals the non-null
// part of the perturbed Laplacian's spectrum.
inline Matrix intermediate_matrix(WeightedGraph const& g, NodeId i, PerturbationConfig const& cfg) {
	return laplacian(reduced_graph(g, i)) + cfg.epsilon() * perturbation_term(g, i);
}

} // namespace biconn

#endif
