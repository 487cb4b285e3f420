#include <biconn/io.hpp>
#include <biconn/random.hpp>

#include <gtest/gtest.h>

using namespace biconn;

namespace {

WeightedGraph path3() { return from_edge_list(3, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{1}, NodeId{2}, 1.0}}); }

bool contains(std::string const& haystack, std::string const& needle) { return haystack.find(needle) != std::string::npos; }

} // namespace

TEST(GraphJson, Example) {
	auto const j = graph_to_json(path3());
	EXPECT_EQ(j.dump(), R"({"edges":[[0,1,1.0],[1,2,1.0]],"n":3,"positions":null})");
	EXPECT_EQ(graph_from_json(j), path3());
}

TEST(GraphJson, RoundTripIsExact) {
	Rng rng(51);
	for (int t = 0; t < 200; ++t) {
		WeightedGraph const g = t % 2 ? random_connected_graph(rng, 1, 20)
		                              : proximity_graph(random_positions(rng, rng.uniform_int(1, 20)), ProximityModel(0.5, 0.125));
		auto const text = graph_to_json(g).dump();
		auto const back = parse_graph(text);
		EXPECT_EQ(back, g);
		EXPECT_EQ(back.positions().has_value(), g.positions().has_value());
		if (g.positions()) EXPECT_EQ(*back.positions(), *g.positions());
		EXPECT_EQ(graph_to_json(back).dump(2), graph_to_json(g).dump(2));
	}
}

TEST(GraphJson, FormatErrors) {
	EXPECT_THROW(parse_graph("{"), FormatError);
	EXPECT_THROW(parse_graph("[]"), FormatError);
	EXPECT_THROW(parse_graph(R"({"edges": []})"), FormatError);
	EXPECT_THROW(parse_graph(R"({"n": 0})"), FormatError);
	EXPECT_THROW(parse_graph(R"({"n": -2})"), FormatError);
	EXPECT_THROW(parse_graph(R"({"n": 3, "edges": [[0, 1]]})"), FormatError);
	EXPECT_THROW(parse_graph(R"({"n": 3, "edges": [[0, "a", 1]]})"), FormatError);
	EXPECT_THROW(parse_graph(R"({"n": 2, "positions": [[0]]})"), FormatError);
	// well-formed but violates graph invariants
	EXPECT_THROW(parse_graph(R"({"n": 3, "edges": [[0, 0, 1]]})"), GraphConstructionError);
	EXPECT_THROW(parse_graph(R"({"n": 3, "edges": [[0, 5, 1]]})"), GraphConstructionError);
	EXPECT_THROW(load_graph("/nonexistent/graph.json"), FormatError);
	EXPECT_EQ(parse_graph(R"({"n": 1})").size(), 1u);
}

TEST(ReportJson, RoundTrip) {
	auto const r = certify_graph(path3(), PerturbationConfig(0.01), BoundMode::ExactNormBound, true);
	auto const j = report_to_json(r);
	EXPECT_EQ(j["graph_certified"], false);
	EXPECT_EQ(j["mode"], "exact");
	EXPECT_EQ(j["spectral_checks"], 1);
	EXPECT_EQ(report_to_json(report_from_json(j)).dump(), j.dump());
	EXPECT_THROW(report_from_json(json::array()), FormatError);
}

TEST(ReportCsv, PathMiddleRow) {
	auto const r = certify_graph(path3(), PerturbationConfig(0.01), BoundMode::ExactNormBound, true);
	auto const csv = report_csv(r);
	EXPECT_TRUE(contains(csv, "node,locally_biconnected,lambda3,paper_bound,exact_bound,certified,oracle\n"));
	EXPECT_TRUE(contains(csv, "0,true,,,,false,non-articulation\n"));
	EXPECT_TRUE(contains(csv, "1,false,0.03,0.0244949,0.0316228,false,articulation\n"));
}

TEST(Sweep, PathMiddleColumns) {
	std::vector<double> const grid{1e-3, 0.1, 1.0};
	auto const rows = sweep(path3(), grid);
	ASSERT_EQ(rows.size(), 9u);
	for (auto const& row : rows)
		if (row.node == NodeId{1}) {
			EXPECT_TRUE(row.test.certified_paper);
			EXPECT_FALSE(row.test.certified_exact);
		}
	auto const csv = sweep_csv(rows);
	EXPECT_TRUE(contains(csv, "1,0.1,0.3,0.244949,0.316228,true,false\n"));
	EXPECT_THROW(sweep(path3(), std::vector<double>{}), DomainError);
}

TEST(EpsilonGrid, Parsing) {
	auto const g = parse_epsilon_grid("1e-4:1:5");
	ASSERT_EQ(g.size(), 5u);
	EXPECT_NEAR(g[0], 1e-4, 1e-18);
	EXPECT_NEAR(g[1], 1e-3, 1e-15);
	EXPECT_NEAR(g[2], 1e-2, 1e-15);
	EXPECT_EQ(g[4], 1.0);
	EXPECT_EQ(parse_epsilon_grid("0.5,0.1"), (std::vector<double>{0.5, 0.1}));
	EXPECT_EQ(parse_epsilon_grid("0.2:0.2:1"), (std::vector<double>{0.2}));
	for (char const* bad : {"", ",", "0:1:3", "1:0.1:3", "1e-3:1:0", "1e-3:1:2.5", "a,b", "0.1,-1", "1:2"})
		EXPECT_THROW(parse_epsilon_grid(bad), DomainError) << bad;
}

TEST(Dot, MarksArticulationPoints) {
	auto const dot = graph_dot(path3());
	EXPECT_TRUE(contains(dot, "  1 [articulation=\"true\", color=\"red\", local_block=\"false\", shape=\"doublecircle\"];\n"));
	EXPECT_TRUE(contains(dot, "  0;\n"));
	EXPECT_TRUE(contains(dot, "  0 -- 1 [label=\"1\", w=\"1\"];\n"));

	auto const k3 = from_edge_list(3, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{0}, NodeId{2}, 1.0}, {NodeId{1}, NodeId{2}, 1.0}});
	EXPECT_FALSE(contains(graph_dot(k3), "articulation"));
	EXPECT_FALSE(contains(graph_dot(k3), "local_block"));

	auto const split = from_edge_list(4, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{2}, NodeId{3}, 1.0}});
	EXPECT_TRUE(contains(graph_dot(split), "disconnected"));
	EXPECT_FALSE(contains(graph_dot(split), "articulation=\"true\""));
}

TEST(Dot, Positions) {
	auto const g = proximity_graph({{0.0, 0.0}, {0.25, 0.5}}, ProximityModel(1.0, 0.125));
	auto const dot = graph_dot(g);
	EXPECT_TRUE(contains(dot, "0 [pos=\"0,0!\"]"));
	EXPECT_TRUE(contains(dot, "1 [pos=\"0.25,0.5!\"]"));
	EXPECT_EQ(dot, graph_dot(parse_graph(graph_to_json(g).dump())));
}
