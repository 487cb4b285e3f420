#include <biconn/bicon.hpp>
#include <biconn/random.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace biconn;

namespace {

WeightedGraph path(std::size_t n) {
	std::vector<Edge> e;
	for (std::size_t k = 0; k + 1 < n; ++k) e.push_back({NodeId{k}, NodeId{k + 1}, 1.0});
	return from_edge_list(n, e);
}

WeightedGraph cycle(std::size_t n) {
	std::vector<Edge> e;
	for (std::size_t k = 0; k < n; ++k) e.push_back({NodeId{k}, NodeId{(k + 1) % n}, 1.0});
	return from_edge_list(n, e);
}

WeightedGraph complete(std::size_t n) {
	std::vector<Edge> e;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j) e.push_back({NodeId{i}, NodeId{j}, 1.0});
	return from_edge_list(n, e);
}

// Two triangles sharing node 2.
WeightedGraph bowtie() {
	return from_edge_list(5, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{1}, NodeId{2}, 1.0}, {NodeId{0}, NodeId{2}, 1.0},
	                          {NodeId{2}, NodeId{3}, 1.0}, {NodeId{3}, NodeId{4}, 1.0}, {NodeId{2}, NodeId{4}, 1.0}});
}

WeightedGraph k4_minus_edge() {
	return from_edge_list(4, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{0}, NodeId{2}, 1.0}, {NodeId{0}, NodeId{3}, 1.0},
	                          {NodeId{1}, NodeId{2}, 1.0}, {NodeId{1}, NodeId{3}, 1.0}});
}

std::vector<NodeId> ids(std::initializer_list<std::size_t> xs) {
	std::vector<NodeId> out;
	for (auto x : xs) out.push_back(NodeId{x});
	return out;
}

} // namespace

TEST(LocalBiconnectivity, Examples) {
	auto const p3 = path(3);
	EXPECT_FALSE(locally_biconnected(p3, NodeId{1}));
	EXPECT_TRUE(locally_biconnected(p3, NodeId{0}));
	EXPECT_TRUE(locally_biconnected(p3, NodeId{2}));
	for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(locally_biconnected(complete(4), NodeId{i}));
	EXPECT_FALSE(locally_biconnected(bowtie(), NodeId{2}));
	EXPECT_TRUE(locally_biconnected(bowtie(), NodeId{0}));
	// C5: neighbours of every node are non-adjacent, yet no node is a cut vertex
	for (std::size_t i = 0; i < 5; ++i) EXPECT_FALSE(locally_biconnected(cycle(5), NodeId{i}));
}

TEST(LocalBiconnectivity, Preconditions) {
	EXPECT_THROW(locally_biconnected(from_edge_list(1, {}), NodeId{0}), DomainError);
	EXPECT_THROW(locally_biconnected(from_edge_list(3, {{NodeId{0}, NodeId{1}, 1.0}}), NodeId{0}), PreconditionError);
	EXPECT_THROW(locally_biconnected(path(3), NodeId{3}), DomainError);
}

// Hand computation for P3's middle node: L^1(eps) = eps * L(P3), spectrum
// eps * {0, 1, 3}; a~ = (1, 1), so the bounds are eps*sqrt(3*2) and
// eps*sqrt((3+2)*2).
TEST(SpectralTest, PathMiddleHandComputation) {
	for (double eps : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0}) {
		auto const t = spectral_test(path(3), NodeId{1}, PerturbationConfig(eps));
		EXPECT_NEAR(t.lambda3, 3.0 * eps, 1e-12);
		EXPECT_NEAR(t.paper_bound, eps * std::sqrt(6.0), 1e-12);
		EXPECT_NEAR(t.exact_norm_bound, eps * std::sqrt(10.0), 1e-12);
		EXPECT_TRUE(t.certified_paper) << "eps " << eps;
		EXPECT_FALSE(t.certified_exact) << "eps " << eps;
	}
}

TEST(SpectralTest, CompleteGraphCertified) {
	// nonnull spectrum of L^i(eps) for K4: {4 eps, 3 + eps, 3 + eps}
	auto const t = spectral_test(complete(4), NodeId{0}, PerturbationConfig(0.01));
	EXPECT_NEAR(t.lambda3, 3.01, 1e-12);
	EXPECT_NEAR(t.exact_norm_bound, 0.01 * std::sqrt(18.0), 1e-12);
	EXPECT_TRUE(t.certified_exact);
	EXPECT_TRUE(t.certified_paper);
}

TEST(SpectralTest, Preconditions) {
	EXPECT_THROW(spectral_test(path(2), NodeId{0}, PerturbationConfig(0.1)), DomainError);
	EXPECT_THROW(spectral_test(from_edge_list(3, {{NodeId{0}, NodeId{1}, 1.0}}), NodeId{0}, PerturbationConfig(0.1)),
	             PreconditionError);
}

TEST(SpectralTest, ProximityExampleArithmetic) {
	// n = 10, ||a~|| = 0.062, eps = 0.05: eps * sqrt(n) * ||a~|| ~ 0.0098
	std::vector<Edge> e{{NodeId{0}, NodeId{1}, 0.062}};
	for (std::size_t k = 1; k + 1 < 10; ++k) e.push_back({NodeId{k}, NodeId{k + 1}, 1.0});
	auto const g = from_edge_list(10, e);
	EXPECT_NEAR(paper_bound(g, NodeId{0}, 0.05), 0.0098, 1e-4);
	EXPECT_NEAR(0.05 * std::sqrt(10.0) * 0.062, 0.0098, 1e-4);
}

TEST(SpectralTest, ExactBoundClosedForm) {
	Rng rng(31);
	for (int t = 0; t < 100; ++t) {
		auto const g = random_connected_graph(rng, 3, 20);
		NodeId const i{rng.uniform_int(0, g.size() - 1)};
		double sq = 0.0;
		for (double a : neighbor_weight_vector(g, i)) sq += a * a;
		double const eps = rng.uniform(1e-3, 1.0);
		EXPECT_NEAR(exact_norm_bound(g, i, eps), eps * std::sqrt((g.size() + 2.0) * sq), 1e-12);
		EXPECT_GE(exact_norm_bound(g, i, eps), paper_bound(g, i, eps));
	}
}

TEST(CertifyGraph, CompleteGraphNeedsNoSpectralChecks) {
	auto const r = certify_graph(complete(4), PerturbationConfig(0.01));
	EXPECT_TRUE(r.graph_certified);
	EXPECT_EQ(r.spectral_checks(), 0u);
	EXPECT_FALSE(r.oracle_biconnected.has_value());
}

TEST(CertifyGraph, PathIsNotCertified) {
	auto const r = certify_graph(path(3), PerturbationConfig(0.01), BoundMode::ExactNormBound, true);
	EXPECT_FALSE(r.graph_certified);
	EXPECT_EQ(r.spectral_checks(), 1u);
	EXPECT_FALSE(r.nodes[1].certified);
	EXPECT_TRUE(*r.nodes[1].oracle_is_articulation);
	EXPECT_FALSE(*r.oracle_biconnected);

	// the sqrt(n) constant certifies the articulation point
	auto const p = certify_graph(path(3), PerturbationConfig(0.01), BoundMode::PaperBound);
	EXPECT_TRUE(p.graph_certified);
}

TEST(CertifyGraph, CycleCertifiedSpectrally) {
	auto const r = certify_graph(cycle(5), PerturbationConfig(0.01), BoundMode::ExactNormBound, true);
	EXPECT_EQ(r.spectral_checks(), 5u);
	EXPECT_TRUE(r.graph_certified);
	EXPECT_TRUE(*r.oracle_biconnected);
}

TEST(CertifyGraph, Preconditions) {
	EXPECT_THROW(certify_graph(path(2), PerturbationConfig(0.1)), DomainError);
	EXPECT_THROW(certify_graph(from_edge_list(4, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{2}, NodeId{3}, 1.0}}), PerturbationConfig(0.1)),
	             PreconditionError);
	EXPECT_EQ(parse_bound_mode("paper"), BoundMode::PaperBound);
	EXPECT_EQ(parse_bound_mode("exact"), BoundMode::ExactNormBound);
	EXPECT_FALSE(parse_bound_mode("loose").has_value());
}

TEST(Oracle, ArticulationExamples) {
	EXPECT_EQ(articulation_points_oracle(path(3)), ids({1}));
	EXPECT_EQ(articulation_points_oracle(path(5)), ids({1, 2, 3}));
	EXPECT_TRUE(articulation_points_oracle(complete(4)).empty());
	EXPECT_EQ(articulation_points_oracle(bowtie()), ids({2}));
	EXPECT_TRUE(articulation_points_oracle(k4_minus_edge()).empty());
	EXPECT_TRUE(articulation_points_oracle(path(2)).empty());
	EXPECT_TRUE(articulation_points_oracle(from_edge_list(1, {})).empty());

	EXPECT_TRUE(is_biconnected_oracle(complete(3)));
	EXPECT_TRUE(is_biconnected_oracle(k4_minus_edge()));
	EXPECT_FALSE(is_biconnected_oracle(bowtie()));
	EXPECT_FALSE(is_biconnected_oracle(path(2)));
	EXPECT_THROW(is_biconnected_oracle(from_edge_list(2, {})), PreconditionError);
}

TEST(Oracle, DoublyConnectedExamples) {
	EXPECT_TRUE(doubly_connected_oracle(cycle(4), NodeId{0}, NodeId{2}));
	EXPECT_TRUE(doubly_connected_oracle(cycle(4), NodeId{0}, NodeId{1}));
	EXPECT_FALSE(doubly_connected_oracle(path(3), NodeId{0}, NodeId{2}));
	EXPECT_FALSE(doubly_connected_oracle(path(3), NodeId{0}, NodeId{1}));
	EXPECT_FALSE(doubly_connected_oracle(bowtie(), NodeId{0}, NodeId{4}));
	EXPECT_TRUE(doubly_connected_oracle(bowtie(), NodeId{0}, NodeId{2}));
	EXPECT_THROW(doubly_connected_oracle(path(3), NodeId{1}, NodeId{1}), DomainError);
}

// Properties on a random corpus of connected graphs.

TEST(BiconProperties, OraclesAgreeAndCertificatesAreSound) {
	Rng rng(32);
	std::size_t certified_nodes = 0, local_nodes = 0, cut_nodes = 0;
	for (int t = 0; t < 300; ++t) {
		auto const g = random_connected_graph(rng, 3, 20);
		auto const cut = articulation_points_oracle(g);
		ASSERT_EQ(cut, articulation_points_brute_force(g)) << "trial " << t;
		cut_nodes += cut.size();
		for (std::size_t k = 0; k < g.size(); ++k) {
			NodeId const i{k};
			bool const is_cut = std::binary_search(cut.begin(), cut.end(), i);
			if (locally_biconnected(g, i)) {
				++local_nodes;
				EXPECT_FALSE(is_cut) << "trial " << t << " node " << k;
			}
			for (double eps : {1e-3, 1e-2, 1e-1}) {
				auto const s = spectral_test(g, i, PerturbationConfig(eps));
				if (s.certified_exact) {
					++certified_nodes;
					EXPECT_FALSE(is_cut) << "trial " << t << " node " << k << " eps " << eps;
				}
			}
		}
	}
	EXPECT_GT(certified_nodes, 0u);
	EXPECT_GT(local_nodes, 0u);
	EXPECT_GT(cut_nodes, 0u);
}

TEST(BiconProperties, BiconnectedIffEveryPairDoublyConnected) {
	Rng rng(33);
	int biconnected = 0;
	for (int t = 0; t < 200; ++t) {
		auto const g = random_connected_graph(rng, 3, 8);
		bool all_pairs = true;
		for (std::size_t a = 0; a < g.size() && all_pairs; ++a)
			for (std::size_t b = a + 1; b < g.size() && all_pairs; ++b)
				all_pairs = doubly_connected_oracle(g, NodeId{a}, NodeId{b});
		EXPECT_EQ(is_biconnected_oracle(g), all_pairs) << "trial " << t;
		biconnected += all_pairs;
	}
	EXPECT_GT(biconnected, 0);
	EXPECT_LT(biconnected, 200);
}

TEST(BiconProperties, CertificateInvariantUnderRelabelling) {
	Rng rng(34);
	for (int t = 0; t < 50; ++t) {
		auto const g = random_connected_graph(rng, 3, 12);
		std::size_t const n = g.size();
		std::vector<std::size_t> perm(n);
		std::iota(perm.begin(), perm.end(), 0);
		for (std::size_t k = n - 1; k > 0; --k) std::swap(perm[k], perm[rng.uniform_int(0, k)]);
		Matrix w(n, n);
		for (std::size_t a = 0; a < n; ++a)
			for (std::size_t b = 0; b < n; ++b) w(perm[a], perm[b]) = g.weights()(a, b);
		WeightedGraph const h(w);
		for (std::size_t a = 0; a < n; ++a) {
			auto const s = spectral_test(g, NodeId{a}, PerturbationConfig(0.05));
			auto const r = spectral_test(h, NodeId{perm[a]}, PerturbationConfig(0.05));
			EXPECT_NEAR(s.lambda3, r.lambda3, 1e-10);
			EXPECT_NEAR(s.exact_norm_bound, r.exact_norm_bound, 1e-12);
		}
	}
}
