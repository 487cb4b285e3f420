#ifndef BICONN_RANDOM_HPP
#define BICONN_RANDOM_HPP

#include "graph.hpp"
#include "spectral.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace biconn {

// Seedable generator with a fixed output sequence on every platform.
// std::mt19937_64's raw stream is pinned by the standard; the standard
// distributions are not, so the mappings to doubles and ranges live here.
class Rng {
public:
	static constexpr std::string_view algorithm = "mt19937_64";

	explicit Rng(std::uint64_t seed) : engine_(seed) {}

	std::uint64_t next() { return engine_(); }

	// Uniform on [0, 1) with 53 random bits.
	double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
	// Uniform on (0, 1].
	double uniform_open_closed() { return 1.0 - uniform(); }

	// Uniform integer in [lo, hi], unbiased by rejection.
	std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
		std::uint64_t const span = hi - lo;
		if (span == std::numeric_limits<std::uint64_t>::max()) return next();
		std::uint64_t const range = span + 1;
		std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
		std::uint64_t x;
		do x = next();
		while (x >= limit);
		return lo + x % range;
	}

	bool bernoulli(double p) { return uniform() < p; }

private:
	std::mt19937_64 engine_;
};

inline std::vector<Point2> random_positions(Rng& rng, std::size_t n) {
	std::vector<Point2> out(n);
	for (auto& p : out) {
		p.x = rng.uniform();
		p.y = rng.uniform();
	}
	return out;
}

// Erdos-Renyi style graph with weights uniform on (0, 1]. May be disconnected.
inline WeightedGraph random_graph(Rng& rng, std::size_t n, double edge_probability) {
	Matrix w(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			if (rng.bernoulli(edge_probability)) w(i, j) = w(j, i) = rng.uniform_open_closed();
	return WeightedGraph(std::move(w));
}

// Joins the components of g by one random link between consecutive components.
inline WeightedGraph connect_components(Rng& rng, WeightedGraph const& g) {
	auto const labels = component_labels(g);
	std::size_t const count = component_count(g);
	if (count <= 1) return g;
	std::vector<std::vector<std::size_t>> members(count);
	for (std::size_t v = 0; v < labels.size(); ++v) members[labels[v]].push_back(v);
	Matrix w = g.weights();
	for (std::size_t c = 0; c + 1 < count; ++c) {
		auto const& a = members[c];
		auto const& b = members[c + 1];
		std::size_t const u = a[rng.uniform_int(0, a.size() - 1)];
		std::size_t const v = b[rng.uniform_int(0, b.size() - 1)];
		w(u, v) = w(v, u) = rng.uniform_open_closed();
	}
	return WeightedGraph(std::move(w), g.positions());
}

// Random tree plus a few random chords: connected, usually with cut vertices.
inline WeightedGraph random_sparse_graph(Rng& rng, std::size_t n, std::size_t extra_edges) {
	Matrix w(n, n);
	for (std::size_t v = 1; v < n; ++v) {
		std::size_t const parent = rng.uniform_int(0, v - 1);
		w(v, parent) = w(parent, v) = rng.uniform_open_closed();
	}
	for (std::size_t k = 0; k < extra_edges && n > 2; ++k) {
		std::size_t const u = rng.uniform_int(0, n - 1);
		std::size_t const v = rng.uniform_int(0, n - 1);
		if (u == v || w(u, v) > 0.0) continue;
		w(u, v) = w(v, u) = rng.uniform_open_closed();
	}
	return WeightedGraph(std::move(w));
}

// Proximity graph over uniform positions in the unit square; the radius is
// grown by 10% after every disconnected draw.
inline WeightedGraph random_connected_geometric(Rng& rng, std::size_t n, double radius, double sigma) {
	for (;;) {
		auto g = proximity_graph(random_positions(rng, n), ProximityModel(radius, sigma));
		if (is_connected_bfs(g)) return g;
		radius *= 1.1;
	}
}

enum class Topology { ErdosRenyi, Geometric, Sparse };

// Connected random graph with n in [min_n, max_n] drawn from a mix of
// topologies. Used by the verification corpus and the property tests.
inline WeightedGraph random_connected_graph(Rng& rng, std::size_t min_n, std::size_t max_n) {
	std::size_t const n = rng.uniform_int(min_n, max_n);
	switch (static_cast<Topology>(rng.uniform_int(0, 2))) {
	case Topology::ErdosRenyi:
		return connect_components(rng, random_graph(rng, n, rng.uniform(0.1, 0.7)));
	case Topology::Geometric:
		return random_connected_geometric(rng, n, rng.uniform(0.25, 0.6), rng.uniform(0.05, 0.3));
	case Topology::Sparse:
	default:
		return random_sparse_graph(rng, n, rng.uniform_int(0, n));
	}
}

} // namespace biconn

#endif
