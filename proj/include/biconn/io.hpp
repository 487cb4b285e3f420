#ifndef BICONN_IO_HPP
#define BICONN_IO_HPP

#include "bicon.hpp"
#include "errors.hpp"
#include "graph.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace biconn {

using json = nlohmann::json;

// printf-style %.<digits>g
inline std::string format_g(double x, int digits) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*g", digits, x);
	return buf;
}

// ---- graph files ---------------------------------------------------------
//   {"n": int, "edges": [[i, j, w], ...], "positions": [[x, y], ...] | null}
// Each undirected edge is written once with i < j.

inline json graph_to_json(WeightedGraph const& g) {
	json edges = json::array();
	for (auto const& e : g.edges()) edges.push_back({e.i.index, e.j.index, e.weight});
	json positions = nullptr;
	if (g.positions()) {
		positions = json::array();
		for (auto const& p : *g.positions()) positions.push_back({p.x, p.y});
	}
	return {{"n", g.size()}, {"edges", std::move(edges)}, {"positions", std::move(positions)}};
}

inline WeightedGraph graph_from_json(json const& j) {
	if (!j.is_object()) throw FormatError("graph JSON must be an object");
	if (!j.contains("n") || !j["n"].is_number_unsigned()) throw FormatError("graph JSON: \"n\" must be a nonnegative integer");
	auto const n = j["n"].get<std::size_t>();
	if (n == 0) throw FormatError("graph JSON: \"n\" must be at least 1");

	std::vector<Edge> edges;
	if (j.contains("edges")) {
		auto const& je = j["edges"];
		if (!je.is_array()) throw FormatError("graph JSON: \"edges\" must be an array");
		for (auto const& e : je) {
			if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() || !e[2].is_number())
				throw FormatError("graph JSON: each edge must be [i, j, w] with nonnegative integer indices, got " + e.dump());
			edges.push_back({NodeId{e[0].get<std::size_t>()}, NodeId{e[1].get<std::size_t>()}, e[2].get<double>()});
		}
	}

	std::optional<std::vector<Point2>> positions;
	if (j.contains("positions") && !j["positions"].is_null()) {
		auto const& jp = j["positions"];
		if (!jp.is_array()) throw FormatError("graph JSON: \"positions\" must be an array or null");
		positions.emplace();
		for (auto const& p : jp) {
			if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
				throw FormatError("graph JSON: each position must be [x, y], got " + p.dump());
			positions->push_back({p[0].get<double>(), p[1].get<double>()});
		}
	}
	return from_edge_list(n, edges, std::move(positions));
}

inline WeightedGraph parse_graph(std::string const& text) {
	json j;
	try {
		j = json::parse(text);
	} catch (json::parse_error const& e) {
		throw FormatError(std::string("malformed JSON: ") + e.what());
	}
	return graph_from_json(j);
}

inline std::string read_file(std::string const& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw FormatError("cannot open " + path);
	return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(std::string const& path, std::string const& content) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw Error("cannot write " + path);
	out << content;
}

inline WeightedGraph load_graph(std::string const& path) { return parse_graph(read_file(path)); }

// ---- certification reports ------------------------------------------------

inline json certificate_to_json(NodeCertificate const& c) {
	json j = {{"node", c.node.index}, {"locally_biconnected", c.locally_biconnected}, {"certified", c.certified}};
	if (c.spectral) {
		j["lambda3"] = c.spectral->lambda3;
		j["paper_bound"] = c.spectral->paper_bound;
		j["exact_norm_bound"] = c.spectral->exact_norm_bound;
		j["certified_paper"] = c.spectral->certified_paper;
		j["certified_exact"] = c.spectral->certified_exact;
	} else {
		j["lambda3"] = nullptr;
		j["paper_bound"] = nullptr;
		j["exact_norm_bound"] = nullptr;
	}
	j["oracle_is_articulation"] = c.oracle_is_articulation ? json(*c.oracle_is_articulation) : json(nullptr);
	return j;
}

inline json report_to_json(BiconnectivityReport const& r) {
	json nodes = json::array();
	for (auto const& c : r.nodes) nodes.push_back(certificate_to_json(c));
	return {{"epsilon", r.epsilon},
	        {"mode", to_string(r.mode)},
	        {"graph_certified", r.graph_certified},
	        {"oracle_biconnected", r.oracle_biconnected ? json(*r.oracle_biconnected) : json(nullptr)},
	        {"spectral_checks", r.spectral_checks()},
	        {"nodes", std::move(nodes)}};
}

inline BiconnectivityReport report_from_json(json const& j) {
	try {
		BiconnectivityReport r;
		r.epsilon = j.at("epsilon").get<double>();
		auto const mode = parse_bound_mode(j.at("mode").get<std::string>());
		if (!mode) throw FormatError("report JSON: unknown mode");
		r.mode = *mode;
		r.graph_certified = j.at("graph_certified").get<bool>();
		if (!j.at("oracle_biconnected").is_null()) r.oracle_biconnected = j["oracle_biconnected"].get<bool>();
		for (auto const& jn : j.at("nodes")) {
			NodeCertificate c;
			c.node = NodeId{jn.at("node").get<std::size_t>()};
			c.locally_biconnected = jn.at("locally_biconnected").get<bool>();
			c.certified = jn.at("certified").get<bool>();
			if (!jn.at("lambda3").is_null()) {
				SpectralTest t;
				t.lambda3 = jn["lambda3"].get<double>();
				t.paper_bound = jn.at("paper_bound").get<double>();
				t.exact_norm_bound = jn.at("exact_norm_bound").get<double>();
				t.certified_paper = jn.at("certified_paper").get<bool>();
				t.certified_exact = jn.at("certified_exact").get<bool>();
				c.spectral = t;
			}
			if (!jn.at("oracle_is_articulation").is_null()) c.oracle_is_articulation = jn["oracle_is_articulation"].get<bool>();
			r.nodes.push_back(c);
		}
		return r;
	} catch (json::exception const& e) {
		throw FormatError(std::string("report JSON: ") + e.what());
	}
}

inline std::string report_csv(BiconnectivityReport const& r) {
	auto b = [](bool v) { return v ? "true" : "false"; };
	std::ostringstream out;
	out << "node,locally_biconnected,lambda3,paper_bound,exact_bound,certified,oracle\n";
	for (auto const& c : r.nodes) {
		out << c.node.index << ',' << b(c.locally_biconnected) << ',';
		if (c.spectral)
			out << format_g(c.spectral->lambda3, 6) << ',' << format_g(c.spectral->paper_bound, 6) << ','
			    << format_g(c.spectral->exact_norm_bound, 6);
		else
			out << ",,";
		out << ',' << b(c.certified) << ',';
		if (c.oracle_is_articulation) out << (*c.oracle_is_articulation ? "articulation" : "non-articulation");
		out << '\n';
	}
	return out.str();
}

// ---- epsilon sweeps --------------------------------------------------------

struct SweepRow {
	NodeId node;
	double epsilon = 0.0;
	SpectralTest test;
};

inline std::vector<SweepRow> sweep(WeightedGraph const& g, std::span<double const> grid, Tolerances const& tol = {}) {
	if (grid.empty()) throw DomainError("epsilon grid is empty");
	if (g.size() <= 2) throw DomainError("sweep requires n > 2");
	detail::require_connected(g);
	std::vector<SweepRow> rows;
	for (std::size_t k = 0; k < g.size(); ++k)
		for (double eps : grid) rows.push_back({NodeId{k}, eps, spectral_test(g, NodeId{k}, PerturbationConfig(eps), tol)});
	return rows;
}

inline std::string sweep_csv(std::span<SweepRow const> rows) {
	std::ostringstream out;
	out << "node,epsilon,lambda3,paper_bound,exact_bound,certified_paper,certified_exact\n";
	for (auto const& r : rows)
		out << r.node.index << ',' << format_g(r.epsilon, 6) << ',' << format_g(r.test.lambda3, 6) << ','
		    << format_g(r.test.paper_bound, 6) << ',' << format_g(r.test.exact_norm_bound, 6) << ','
		    << (r.test.certified_paper ? "true" : "false") << ',' << (r.test.certified_exact ? "true" : "false") << '\n';
	return out.str();
}

// "lo:hi:count" (log-spaced, inclusive) or a comma-separated list.
inline std::vector<double> parse_epsilon_grid(std::string const& spec) {
	std::vector<double> out;
	auto number = [&](std::string const& s) {
		try {
			std::size_t used = 0;
			double const v = std::stod(s, &used);
			if (used != s.size()) throw std::invalid_argument(s);
			return v;
		} catch (std::exception const&) {
			throw DomainError("epsilon grid: cannot parse '" + s + "'");
		}
	};
	if (spec.find(':') != std::string::npos) {
		std::vector<std::string> parts;
		std::stringstream ss(spec);
		for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
		if (parts.size() != 3) throw DomainError("epsilon grid: expected lo:hi:count");
		double const lo = number(parts[0]), hi = number(parts[1]);
		double const count = number(parts[2]);
		if (!(lo > 0.0) || !(hi >= lo) || count < 1 || count != std::floor(count))
			throw DomainError("epsilon grid: need 0 < lo <= hi and integer count >= 1");
		auto const k = static_cast<std::size_t>(count);
		for (std::size_t s = 0; s < k; ++s) {
			double const t = k == 1 ? 0.0 : static_cast<double>(s) / static_cast<double>(k - 1);
			out.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
		}
		if (k > 1) out.back() = hi;
	} else {
		std::stringstream ss(spec);
		for (std::string p; std::getline(ss, p, ',');)
			if (!p.empty()) out.push_back(number(p));
	}
	if (out.empty()) throw DomainError("epsilon grid is empty");
	for (double e : out)
		if (!(e > 0.0)) throw DomainError("epsilon grid values must be positive");
	return out;
}

// ---- DOT -------------------------------------------------------------------
// Articulation points (exact oracle) are drawn red with articulation="true";
// nodes failing the local block test get local_block="false" and a double
// circle. Marks are omitted for disconnected graphs.

inline std::string graph_dot(WeightedGraph const& g) {
	std::set<std::size_t> cut, not_local;
	bool const marked = g.size() >= 2 && is_connected_bfs(g);
	if (marked) {
		for (auto v : articulation_points_oracle(g)) cut.insert(v.index);
		for (std::size_t v = 0; v < g.size(); ++v)
			if (!locally_biconnected(g, NodeId{v})) not_local.insert(v);
	}

	std::ostringstream out;
	out << "graph G {\n";
	if (!marked && g.size() >= 2) out << "  // disconnected graph: no articulation marks\n";
	for (std::size_t v = 0; v < g.size(); ++v) {
		std::vector<std::string> attrs;
		if (g.positions()) {
			auto const p = (*g.positions())[v];
			attrs.push_back("pos=\"" + format_g(p.x, 6) + "," + format_g(p.y, 6) + "!\"");
		}
		if (cut.count(v)) {
			attrs.push_back("articulation=\"true\"");
			attrs.push_back("color=\"red\"");
		}
		if (not_local.count(v)) {
			attrs.push_back("local_block=\"false\"");
			attrs.push_back("shape=\"doublecircle\"");
		}
		out << "  " << v;
		if (!attrs.empty()) {
			out << " [";
			for (std::size_t k = 0; k < attrs.size(); ++k) out << (k ? ", " : "") << attrs[k];
			out << "]";
		}
		out << ";\n";
	}
	for (auto const& e : g.edges())
		out << "  " << e.i.index << " -- " << e.j.index << " [label=\"" << format_g(e.weight, 4) << "\", w=\"" << format_g(e.weight, 17) << "\"];\n";
	out << "}\n";
	return out.str();
}

} // namespace biconn

#endif
