// biconn: certify articulation points of weighted networks from the spectrum of
// per-node perturbed Laplacians, and cross-check against exact oracles.

#include <biconn/biconn.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

using namespace biconn;

enum ExitCode : int {
	exit_ok = 0,
	exit_usage = 1,
	exit_not_certified = 2,
	exit_precondition = 3,
	exit_format = 4,
};

struct RunConfig {
	std::string input;
	std::string output;
	std::string csv;
	double epsilon = 0.01;
	std::string mode = "exact";
	bool oracle = false;
	std::uint64_t seed = 1;
	std::size_t n = 10;
	double radius = 0.5;
	double sigma = 0.125;
	std::size_t retries = 1000;
	std::string eps_grid = "1e-4:1:5";
	std::size_t trials = 1000;
	std::size_t corpus = 500;
	Tolerances tol;
};

void emit(std::string const& path, std::string const& text) {
	if (path.empty())
		std::cout << text;
	else
		write_file(path, text);
}

std::string dump(json const& j) { return j.dump(2) + "\n"; }

int cmd_gen(RunConfig const& cfg) {
	ProximityModel const model(cfg.radius, cfg.sigma);
	Rng rng(cfg.seed);
	for (std::size_t attempt = 1; attempt <= cfg.retries; ++attempt) {
		auto const g = proximity_graph(random_positions(rng, cfg.n), model);
		if (!is_connected_bfs(g)) continue;
		json j = graph_to_json(g);
		j["generator"] = {{"rng", Rng::algorithm}, {"seed", cfg.seed}, {"attempt", attempt},
		                  {"radius", cfg.radius}, {"sigma", cfg.sigma}};
		emit(cfg.output, dump(j));
		return exit_ok;
	}
	std::cerr << "error: no connected placement of " << cfg.n << " nodes with R = " << cfg.radius << " after "
	          << cfg.retries << " attempts; increase --radius or --n\n";
	return exit_precondition;
}

BoundMode mode_of(RunConfig const& cfg) { return *parse_bound_mode(cfg.mode); }

int require_certifiable(WeightedGraph const& g) {
	if (g.size() <= 2) {
		std::cerr << "precondition failed: certification needs n > 2, got n = " << g.size() << "\n";
		return exit_precondition;
	}
	return exit_ok;
}

int cmd_check(RunConfig const& cfg) {
	auto const g = load_graph(cfg.input);
	if (int rc = require_certifiable(g)) return rc;
	auto const report = certify_graph(g, PerturbationConfig(cfg.epsilon), mode_of(cfg), cfg.oracle, cfg.tol);
	emit(cfg.output, dump(report_to_json(report)));

	std::string csv_path = cfg.csv;
	if (csv_path.empty() && !cfg.output.empty())
		csv_path = std::filesystem::path(cfg.output).replace_extension(".csv").string();
	if (!csv_path.empty()) write_file(csv_path, report_csv(report));

	std::cerr << (report.graph_certified ? "certified biconnected" : "not certified") << " (" << report.spectral_checks()
	          << " spectral checks, mode " << cfg.mode << ", epsilon " << cfg.epsilon << ")\n";
	return report.graph_certified ? exit_ok : exit_not_certified;
}

int cmd_oracle(RunConfig const& cfg) {
	auto const g = load_graph(cfg.input);
	auto const cut = articulation_points_oracle(g);
	auto const brute = articulation_points_brute_force(g);
	json points = json::array();
	for (auto v : cut) points.push_back(v.index);
	json out = {{"articulation_points", points},
	            {"biconnected", is_biconnected_oracle(g)},
	            {"brute_force_agrees", cut == brute},
	            {"algebraic_connectivity", g.size() >= 2 ? json(algebraic_connectivity(g)) : json(nullptr)}};
	emit(cfg.output, dump(out));
	return exit_ok;
}

int cmd_sweep(RunConfig const& cfg) {
	auto const g = load_graph(cfg.input);
	if (int rc = require_certifiable(g)) return rc;
	auto const grid = parse_epsilon_grid(cfg.eps_grid);
	auto const rows = sweep(g, grid, cfg.tol);
	emit(cfg.output, sweep_csv(rows));
	return exit_ok;
}

int cmd_export(RunConfig const& cfg) {
	emit(cfg.output, graph_dot(load_graph(cfg.input)));
	return exit_ok;
}

int cmd_verify(RunConfig const& cfg) {
	if (cfg.trials < 1 || cfg.corpus < 1) throw DomainError("--trials and --corpus must be at least 1");
	VerifyConfig vc;
	vc.seed = cfg.seed;
	vc.corpus_size = cfg.corpus;
	vc.counterexample_trials = cfg.trials;
	auto const s = run_verification(vc, cfg.tol);

	auto row = [](CheckOutcome const& c, char const* kind) {
		std::printf("%-34s %-6s %-13s worst err/tol = %.3g\n", c.name.c_str(), c.passed ? "PASS" : "FAIL", kind,
		            c.max_error);
	};
	for (auto const& c : s.mandatory) row(c, "mandatory");
	for (auto const& c : s.informational) row(c, "info");
	std::printf("derivative reference matches: trace %zu / %zu, (n-1)*trace %zu / %zu\n", s.derivative_matches_trace,
	            s.derivative_runs, s.derivative_matches_scaled, s.derivative_runs);
	std::printf("counterexample witnesses: paper bound %zu, exact bound %zu\n", s.paper_witnesses, s.exact_witnesses);
	if (!cfg.output.empty()) write_file(cfg.output, dump(summary_to_json(s, vc)));
	return s.all_mandatory_passed() ? exit_ok : exit_not_certified;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Spectral biconnectivity certificates for weighted networks"};
	app.require_subcommand(1);
	RunConfig cfg;

	app.add_option("--tol-connect", cfg.tol.connectivity, "threshold separating a zero lambda_2 from a positive one")
		->capture_default_str();
	app.add_option("--tol-residual", cfg.tol.residual, "eigenpair residual / multiplicity tolerance")->capture_default_str();
	app.add_option("--tol-symmetry", cfg.tol.symmetry, "relative symmetry tolerance for symmetric solves")->capture_default_str();
	app.add_option("--tol-margin", cfg.tol.strict_margin, "margin on the certificate's strict inequality")->capture_default_str();

	auto* gen = app.add_subcommand("gen", "random R-disk proximity graph in the unit square");
	gen->add_option("--n", cfg.n, "node count")->required()->check(CLI::PositiveNumber);
	gen->add_option("--radius", cfg.radius, "communication radius R")->capture_default_str();
	gen->add_option("--sigma", cfg.sigma, "weight decay sigma")->capture_default_str();
	gen->add_option("--seed", cfg.seed)->capture_default_str();
	gen->add_option("--retries", cfg.retries, "placements tried before giving up")->capture_default_str();
	gen->add_option("--output", cfg.output, "graph JSON (stdout if omitted)");

	auto* check = app.add_subcommand("check", "certify every node and the whole graph");
	check->add_option("--input", cfg.input, "graph JSON")->required();
	check->add_option("--epsilon", cfg.epsilon)->capture_default_str();
	check->add_option("--mode", cfg.mode)->check(CLI::IsMember({"paper", "exact"}))->capture_default_str();
	check->add_flag("--oracle", cfg.oracle, "add exact articulation-point columns");
	check->add_option("--output", cfg.output, "report JSON (stdout if omitted); CSV written next to it");
	check->add_option("--csv", cfg.csv, "explicit CSV path");

	auto* oracle = app.add_subcommand("oracle", "exact articulation points and biconnectivity");
	oracle->add_option("--input", cfg.input, "graph JSON")->required();
	oracle->add_option("--output", cfg.output);

	auto* verify = app.add_subcommand("verify", "run the numerical verification corpus");
	verify->add_option("--seed", cfg.seed)->capture_default_str();
	verify->add_option("--trials", cfg.trials, "counterexample search trials")->capture_default_str();
	verify->add_option("--corpus", cfg.corpus, "random graphs in the verification corpus")->capture_default_str();
	verify->add_option("--output", cfg.output, "summary JSON");

	auto* sweep_cmd = app.add_subcommand("sweep", "certificate terms over an epsilon grid");
	sweep_cmd->add_option("--input", cfg.input, "graph JSON")->required();
	sweep_cmd->add_option("--eps-grid", cfg.eps_grid, "lo:hi:count (log-spaced) or comma list")->capture_default_str();
	sweep_cmd->add_option("--output", cfg.output, "CSV (stdout if omitted)");

	auto* export_cmd = app.add_subcommand("export", "Graphviz DOT rendering with articulation marks");
	export_cmd->add_option("--input", cfg.input, "graph JSON")->required();
	export_cmd->add_option("--output", cfg.output, "DOT (stdout if omitted)");

	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const& e) {
		int const rc = app.exit(e);
		return rc == 0 ? exit_ok : exit_usage;
	}

	try {
		if (*gen) return cmd_gen(cfg);
		if (*check) return cmd_check(cfg);
		if (*oracle) return cmd_oracle(cfg);
		if (*verify) return cmd_verify(cfg);
		if (*sweep_cmd) return cmd_sweep(cfg);
		if (*export_cmd) return cmd_export(cfg);
	} catch (FormatError const& e) {
		std::cerr << "input error: " << e.what() << "\n";
		return exit_format;
	} catch (GraphConstructionError const& e) {
		std::cerr << "input error: " << e.what() << "\n";
		return exit_format;
	} catch (PreconditionError const& e) {
		std::cerr << "precondition failed: " << e.what() << "\n";
		return exit_precondition;
	} catch (DomainError const& e) {
		std::cerr << "invalid argument: " << e.what() << "\n";
		return exit_usage;
	} catch (std::exception const& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	}
	return exit_usage;
}
