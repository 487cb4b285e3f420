#ifndef BICONN_VERIFY_HPP
#define BICONN_VERIFY_HPP

// Numerical checks of the spectral identities behind the certificate:
// spectrum of the intermediate matrix, realness of its pencil with the reduced
// Laplacian, the eigenvalue-gap bound, and the rank-one perturbation Q.

#include "bicon.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "random.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace biconn {

struct CheckOutcome {
	std::string name;
	bool passed = false;
	double max_error = 0.0;
	double tolerance = 0.0;
	json details = json::object();
	std::optional<json> witness;  // inputs that reproduce a failure

	static CheckOutcome make(std::string name, double max_error, double tolerance) {
		CheckOutcome c;
		c.name = std::move(name);
		c.max_error = max_error;
		c.tolerance = tolerance;
		c.passed = max_error <= tolerance;
		return c;
	}
};

inline json outcome_to_json(CheckOutcome const& c) {
	json j = {{"name", c.name}, {"passed", c.passed}, {"max_error", c.max_error}, {"tolerance", c.tolerance}, {"details", c.details}};
	j["witness"] = c.witness ? *c.witness : json(nullptr);
	return j;
}

// alpha L^{R_i} + beta P^i(eps) == gamma L^{R_i} + eta (diag(a~) + a~ 1^T)
class CombinationParams {
public:
	CombinationParams(double alpha, double beta, double epsilon) : alpha_(alpha), beta_(beta), epsilon_(epsilon) {
		if (alpha * alpha + beta * beta == 0.0) throw DomainError("combination requires alpha^2 + beta^2 != 0");
	}
	double alpha() const noexcept { return alpha_; }
	double beta() const noexcept { return beta_; }
	double epsilon() const noexcept { return epsilon_; }
	double gamma() const noexcept { return alpha_ + beta_; }
	double eta() const noexcept { return beta_ * epsilon_; }

private:
	double alpha_, beta_, epsilon_;
};

namespace detail {

inline void require_checkable(WeightedGraph const& g, NodeId i, std::size_t min_n) {
	detail::require_node(g, i);
	if (g.size() < min_n) throw DomainError("check requires n >= " + std::to_string(min_n));
	detail::require_connected(g);
}

// P^i(eps) for any real eps, including 0.
inline Matrix intermediate_matrix_raw(WeightedGraph const& g, NodeId i, double eps) {
	return laplacian(reduced_graph(g, i)) + eps * perturbation_term(g, i);
}

inline json witness_for(WeightedGraph const& g, NodeId i, json params) {
	params["graph"] = graph_to_json(g);
	params["node"] = i.index;
	return params;
}

inline void attach_witness(CheckOutcome& c, WeightedGraph const& g, NodeId i, json params) {
	if (!c.passed) c.witness = witness_for(g, i, std::move(params));
}

// Matches `values` against {expected} + {0 repeated zeros} + one free value.
// Every candidate for the free value is tried; the remaining values are
// paired with the sorted targets. Returns the best split.
struct SpectrumSplit {
	double free_value = 0.0;
	double nonnull_error = 0.0;
	double null_error = 0.0;
	std::vector<double> null_values;  // values paired with the zero targets, ascending
};

inline SpectrumSplit split_spectrum(std::vector<double> values, std::vector<double> const& expected, std::size_t zeros) {
	std::sort(values.begin(), values.end());
	std::vector<double> targets = expected;
	for (std::size_t k = 0; k < zeros; ++k) targets.push_back(0.0);
	std::vector<std::size_t> order(targets.size());
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return targets[a] < targets[b]; });

	SpectrumSplit best;
	double best_err = std::numeric_limits<double>::infinity();
	for (std::size_t skip = 0; skip < values.size(); ++skip) {
		SpectrumSplit s;
		s.free_value = values[skip];
		for (std::size_t k = 0, v = 0; k < order.size(); ++k, ++v) {
			if (v == skip) ++v;
			double const err = std::abs(values[v] - targets[order[k]]);
			if (order[k] >= expected.size()) {
				s.null_error = std::max(s.null_error, err);
				s.null_values.push_back(values[v]);
			} else {
				s.nonnull_error = std::max(s.nonnull_error, err);
			}
		}
		double const err = std::max(s.nonnull_error, s.null_error);
		if (err < best_err) {
			best_err = err;
			best = std::move(s);
		}
	}
	return best;
}

inline std::size_t null_multiplicity(std::vector<double> const& ascending, double tol) {
	return static_cast<std::size_t>(std::count_if(ascending.begin(), ascending.end(), [&](double x) { return std::abs(x) < tol; }));
}

} // namespace detail

inline Matrix combination_matrix(WeightedGraph const& g, NodeId i, CombinationParams const& p) {
	return p.alpha() * laplacian(reduced_graph(g, i)) + p.beta() * detail::intermediate_matrix_raw(g, i, p.epsilon());
}

// gamma L^{R_i} + eta a~_i 1^T
inline Matrix q_matrix(WeightedGraph const& g, NodeId i, double gamma, double eta) {
	auto const a = neighbor_weight_vector(g, i);
	std::vector<double> const ones(a.size(), 1.0);
	return gamma * laplacian(reduced_graph(g, i)) + eta * Matrix::outer(a, ones);
}

// Spectrum of P^i(eps) against the non-null spectrum of L^i(eps), matched by rank.
inline CheckOutcome check_theorem1(WeightedGraph const& g, NodeId i, double eps) {
	detail::require_checkable(g, i, 3);
	PerturbationConfig const cfg(eps);
	Matrix const lp = perturbed_laplacian(g, i, cfg);
	auto const p_spec = general_eigen(intermediate_matrix(g, i, cfg));
	auto const l_spec = symmetric_eigen(lp).eigenvalues;

	double err = 0.0;
	for (std::size_t k = 0; k < p_spec.eigenvalues.size(); ++k)
		err = std::max(err, std::abs(p_spec.eigenvalues[k].real() - l_spec[k + 1]));
	double const imag = p_spec.max_abs_imag();
	constexpr double imag_tol = 1e-8;

	auto c = CheckOutcome::make("intermediate_spectrum", imag > imag_tol ? std::numeric_limits<double>::infinity() : err,
	                            1e-7 * std::max(1.0, lp.frobenius_norm()));
	c.details = {{"max_rank_mismatch", err}, {"max_imag", imag}, {"null_eigenvalue", l_spec[0]}};
	detail::attach_witness(c, g, i, {{"epsilon", eps}});
	return c;
}

// F = alpha L^{R_i} + beta P^i(eps) must have a real spectrum.
inline CheckOutcome check_prop2(WeightedGraph const& g, NodeId i, CombinationParams const& p) {
	detail::require_checkable(g, i, 2);
	Matrix const f = combination_matrix(g, i, p);
	double const imag = general_eigen(f).max_abs_imag();
	auto c = CheckOutcome::make("combination_real_spectrum", imag, 1e-7 * std::max(1.0, f.frobenius_norm()));
	c.details = {{"alpha", p.alpha()}, {"beta", p.beta()}, {"gamma", p.gamma()}, {"eta", p.eta()}};
	detail::attach_witness(c, g, i, {{"epsilon", p.epsilon()}, {"alpha", p.alpha()}, {"beta", p.beta()}});
	return c;
}

// max_j |psi_j - xi_j| over descending spectra of A = P^i(eps), B = L^{R_i}
// must not exceed ||A - B||_F.
inline CheckOutcome check_gap_lemma(WeightedGraph const& g, NodeId i, double eps) {
	detail::require_checkable(g, i, 2);
	Matrix const b = laplacian(reduced_graph(g, i));
	Matrix const a = detail::intermediate_matrix_raw(g, i, eps);
	auto psi = general_eigen(a).real_parts();
	auto xi = symmetric_eigen(b).eigenvalues;
	std::reverse(psi.begin(), psi.end());
	std::reverse(xi.begin(), xi.end());

	double gap = 0.0;
	for (std::size_t k = 0; k < psi.size(); ++k) gap = std::max(gap, std::abs(psi[k] - xi[k]));
	double const norm = (a - b).frobenius_norm();
	auto c = CheckOutcome::make("gap_bound", std::max(0.0, gap - norm), 1e-9);
	c.details = {{"gap", gap}, {"norm", norm}};
	detail::attach_witness(c, g, i, {{"epsilon", eps}});
	return c;
}

// Q^i(eta) keeps gamma times the non-null spectrum of L^{R_i}; of the l null
// eigenvalues, l - 1 stay at zero and one moves off with the sign of eta.
inline CheckOutcome check_q_spectrum(WeightedGraph const& g, NodeId i, double gamma, double eta, Tolerances const& tol = {}) {
	detail::require_checkable(g, i, 2);
	if (gamma == 0.0) throw DomainError("Q spectrum check requires gamma != 0");
	constexpr double check_tol = 1e-7;

	WeightedGraph const reduced = reduced_graph(g, i);
	auto const base = symmetric_eigen(laplacian(reduced)).eigenvalues;
	std::size_t const l = detail::null_multiplicity(base, tol.connectivity);
	std::size_t const components = component_count(reduced);

	std::vector<double> expected;
	for (double x : base)
		if (std::abs(x) >= tol.connectivity) expected.push_back(gamma * x);
	auto const values = general_eigen(q_matrix(g, i, gamma, eta)).real_parts();
	auto const split = detail::split_spectrum(values, expected, l > 0 ? l - 1 : 0);

	double err = std::max(split.nonnull_error, split.null_error);
	bool moved = eta == 0.0 ? std::abs(split.free_value) <= check_tol : split.free_value * (eta > 0 ? 1.0 : -1.0) > check_tol;
	if (!moved || l != components || l == 0) err = std::numeric_limits<double>::infinity();

	auto c = CheckOutcome::make("q_spectrum", err, check_tol);
	c.details = {{"gamma", gamma},
	             {"eta", eta},
	             {"null_multiplicity", l},
	             {"components_bfs", components},
	             {"nonnull_error", split.nonnull_error},
	             {"null_error", split.null_error},
	             {"moving_eigenvalue", split.free_value}};
	detail::attach_witness(c, g, i, {{"gamma", gamma}, {"eta", eta}});
	return c;
}

struct QDerivativeReport {
	CheckOutcome outcome;           // gating: moving derivative > 0, others ~ 0
	double finite_difference = 0.0; // d lambda / d eta at 0 of the eigenvalue leaving the origin
	double trace_reference = 0.0;   // sum of a~_i
	double scaled_reference = 0.0;  // (n - 1) * sum of a~_i
	bool matches_trace = false;
	bool matches_scaled = false;
	double max_null_derivative = 0.0;
};

// Central finite difference (h = 1e-5) of the null cluster of Q^i(eta), gamma = 1.
inline QDerivativeReport check_q_derivative(WeightedGraph const& g, NodeId i, Tolerances const& tol = {}) {
	detail::require_checkable(g, i, 2);
	constexpr double h = 1e-5;
	constexpr double rel_tol = 1e-3;

	auto const base = symmetric_eigen(laplacian(reduced_graph(g, i))).eigenvalues;
	std::size_t const l = detail::null_multiplicity(base, tol.connectivity);
	std::size_t const zeros = l > 0 ? l - 1 : 0;
	std::vector<double> expected;
	for (double x : base)
		if (std::abs(x) >= tol.connectivity) expected.push_back(x);

	auto const plus = detail::split_spectrum(general_eigen(q_matrix(g, i, 1.0, h)).real_parts(), expected, zeros);
	auto const minus = detail::split_spectrum(general_eigen(q_matrix(g, i, 1.0, -h)).real_parts(), expected, zeros);

	QDerivativeReport r;
	r.finite_difference = (plus.free_value - minus.free_value) / (2.0 * h);
	for (std::size_t k = 0; k < plus.null_values.size(); ++k)
		r.max_null_derivative = std::max(r.max_null_derivative, std::abs(plus.null_values[k] - minus.null_values[k]) / (2.0 * h));

	auto const a = neighbor_weight_vector(g, i);
	r.trace_reference = std::accumulate(a.begin(), a.end(), 0.0);
	r.scaled_reference = static_cast<double>(g.size() - 1) * r.trace_reference;
	r.matches_trace = std::abs(r.finite_difference - r.trace_reference) <= rel_tol * std::abs(r.trace_reference);
	r.matches_scaled = std::abs(r.finite_difference - r.scaled_reference) <= rel_tol * std::abs(r.scaled_reference);

	double const err = r.finite_difference > 0.0 ? r.max_null_derivative : std::numeric_limits<double>::infinity();
	r.outcome = CheckOutcome::make("q_derivative", err, rel_tol);
	r.outcome.details = {{"finite_difference", r.finite_difference},
	                     {"trace_reference", r.trace_reference},
	                     {"scaled_reference", r.scaled_reference},
	                     {"matches_trace", r.matches_trace},
	                     {"matches_scaled", r.matches_scaled},
	                     {"null_multiplicity", l},
	                     {"max_null_derivative", r.max_null_derivative}};
	detail::attach_witness(r.outcome, g, i, json::object());
	return r;
}

// ---- counterexample search ---------------------------------------------------

struct Witness {
	WeightedGraph graph;
	NodeId node;
	double epsilon = 0.0;
	BoundMode mode = BoundMode::ExactNormBound;
	double lambda3 = 0.0;
	double bound = 0.0;
};

inline json witness_to_json(Witness const& w) {
	return {{"graph", graph_to_json(w.graph)}, {"node", w.node.index}, {"epsilon", w.epsilon},
	        {"mode", to_string(w.mode)},        {"lambda3", w.lambda3},   {"bound", w.bound}};
}

// Unit-weight graphs with cut vertices, searched before the random draws.
inline std::vector<WeightedGraph> canonical_cut_graphs() {
	return {
		from_edge_list(3, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{1}, NodeId{2}, 1.0}}),                              // P3
		from_edge_list(4, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{0}, NodeId{2}, 1.0}, {NodeId{0}, NodeId{3}, 1.0}}), // star
		from_edge_list(4, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{1}, NodeId{2}, 1.0}, {NodeId{2}, NodeId{3}, 1.0}}), // P4
		from_edge_list(5, {{NodeId{0}, NodeId{1}, 1.0}, {NodeId{1}, NodeId{2}, 1.0}, {NodeId{0}, NodeId{2}, 1.0},
		                   {NodeId{2}, NodeId{3}, 1.0}, {NodeId{3}, NodeId{4}, 1.0}, {NodeId{2}, NodeId{4}, 1.0}}),  // bowtie
	};
}

// Certificates in `mode` that hold on an actual articulation point. Searches
// the canonical graphs, then `trials` random connected graphs (n in [3, 15])
// with epsilon log-uniform in [1e-4, 1].
inline std::vector<Witness> counterexample_search(std::size_t trials, BoundMode mode, std::uint64_t seed,
                                                  Tolerances const& tol = {}) {
	if (trials < 1) throw DomainError("counterexample search needs trials >= 1");
	Rng rng(seed);
	std::vector<Witness> out;

	auto probe = [&](WeightedGraph const& g, double eps) {
		auto const cut = articulation_points_oracle(g);
		for (NodeId v : cut) {
			auto const t = spectral_test(g, v, PerturbationConfig(eps), tol);
			if (t.certified(mode)) out.push_back({g, v, eps, mode, t.lambda3, t.bound(mode)});
		}
	};
	for (auto const& g : canonical_cut_graphs())
		for (double eps : {1e-3, 1e-2, 1e-1, 1.0}) probe(g, eps);
	for (std::size_t t = 0; t < trials; ++t) {
		auto const g = random_connected_graph(rng, 3, 15);
		probe(g, std::pow(10.0, rng.uniform(-4.0, 0.0)));
	}
	return out;
}

// ---- corpus runs -------------------------------------------------------------

inline std::vector<WeightedGraph> make_corpus(std::uint64_t seed, std::size_t count, std::size_t min_n, std::size_t max_n) {
	Rng rng(seed);
	std::vector<WeightedGraph> out;
	out.reserve(count);
	for (std::size_t k = 0; k < count; ++k) out.push_back(random_connected_graph(rng, min_n, max_n));
	return out;
}

// Running summary of one check over many inputs; keeps the first failure.
struct CheckTally {
	std::string name;
	std::size_t runs = 0;
	std::size_t failures = 0;
	double worst_ratio = 0.0;  // max of max_error / tolerance
	double worst_error = 0.0;
	std::optional<json> first_failure;

	void add(CheckOutcome const& c) {
		++runs;
		worst_error = std::max(worst_error, c.max_error);
		worst_ratio = std::max(worst_ratio, c.tolerance > 0 ? c.max_error / c.tolerance : (c.max_error > 0 ? INFINITY : 0.0));
		if (!c.passed) {
			++failures;
			if (!first_failure) first_failure = outcome_to_json(c);
		}
	}

	CheckOutcome outcome() const {
		auto c = CheckOutcome::make(name, worst_ratio, 1.0);
		c.details = {{"runs", runs}, {"failures", failures}, {"worst_error", worst_error}, {"worst_error_to_tolerance", worst_ratio}};
		c.witness = first_failure;
		return c;
	}
};

struct VerifyConfig {
	std::uint64_t seed = 1;
	std::size_t corpus_size = 500;
	std::size_t min_n = 3;
	std::size_t max_n = 20;
	std::vector<double> epsilons{1e-3, 1e-2, 1e-1, 1.0};
	std::size_t combination_draws = 20;
	std::vector<double> gammas{0.5, 1.0, 2.0};
	double eta = 1e-3;
	std::size_t counterexample_trials = 1000;
};

struct VerifySummary {
	std::vector<CheckOutcome> mandatory;  // gate the verdict
	std::vector<CheckOutcome> informational;
	std::size_t derivative_runs = 0;
	std::size_t derivative_matches_trace = 0;
	std::size_t derivative_matches_scaled = 0;
	std::size_t paper_witnesses = 0;
	std::size_t exact_witnesses = 0;
	std::optional<json> first_paper_witness;

	bool all_mandatory_passed() const {
		return std::all_of(mandatory.begin(), mandatory.end(), [](auto const& c) { return c.passed; });
	}
};

inline VerifySummary run_verification(VerifyConfig const& cfg, Tolerances const& tol = {}) {
	if (cfg.corpus_size < 1 || cfg.counterexample_trials < 1) throw DomainError("verification needs at least one trial");
	auto const corpus = make_corpus(cfg.seed, cfg.corpus_size, cfg.min_n, cfg.max_n);
	Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

	CheckTally thm1{"intermediate_spectrum"}, prop2{"combination_real_spectrum"}, gap{"gap_bound"}, qspec{"q_spectrum"};
	CheckTally deriv{"q_derivative"}, lemma1{"laplacian_eigvec_orthogonality"};
	VerifySummary s;

	for (auto const& g : corpus) {
		auto const spec = symmetric_eigen(laplacian(g), true, tol);
		double orth = 0.0;
		for (std::size_t k = 1; k < g.size(); ++k) {
			auto const& v = (*spec.eigenvectors)[k];
			orth = std::max(orth, std::abs(std::accumulate(v.begin(), v.end(), 0.0)));
		}
		auto lc = CheckOutcome::make("laplacian_eigvec_orthogonality", orth, 1e-8);
		if (!lc.passed) lc.witness = json{{"graph", graph_to_json(g)}};
		lemma1.add(lc);

		for (std::size_t k = 0; k < g.size(); ++k) {
			NodeId const i{k};
			for (double eps : cfg.epsilons) {
				thm1.add(check_theorem1(g, i, eps));
				gap.add(check_gap_lemma(g, i, eps));
				for (std::size_t d = 0; d < cfg.combination_draws; ++d) {
					double alpha = rng.uniform(-2.0, 2.0), beta = rng.uniform(-2.0, 2.0);
					if (alpha == 0.0 && beta == 0.0) alpha = 1.0;
					prop2.add(check_prop2(g, i, CombinationParams(alpha, beta, eps)));
				}
			}
			for (double gamma : cfg.gammas) qspec.add(check_q_spectrum(g, i, gamma, cfg.eta, tol));
			auto const r = check_q_derivative(g, i, tol);
			deriv.add(r.outcome);
			++s.derivative_runs;
			s.derivative_matches_trace += r.matches_trace;
			s.derivative_matches_scaled += r.matches_scaled;
		}
	}

	s.mandatory = {thm1.outcome(), prop2.outcome(), gap.outcome(), qspec.outcome(), lemma1.outcome()};

	auto d = deriv.outcome();
	d.details["matches_trace"] = s.derivative_matches_trace;
	d.details["matches_scaled"] = s.derivative_matches_scaled;
	s.informational.push_back(std::move(d));

	auto const exact = counterexample_search(cfg.counterexample_trials, BoundMode::ExactNormBound, cfg.seed, tol);
	auto const paper = counterexample_search(cfg.counterexample_trials, BoundMode::PaperBound, cfg.seed, tol);
	s.exact_witnesses = exact.size();
	s.paper_witnesses = paper.size();
	if (!paper.empty()) s.first_paper_witness = witness_to_json(paper.front());

	auto soundness = CheckOutcome::make("exact_bound_soundness", static_cast<double>(exact.size()), 0.0);
	soundness.details = {{"trials", cfg.counterexample_trials}, {"witnesses", exact.size()}};
	if (!exact.empty()) soundness.witness = witness_to_json(exact.front());
	s.mandatory.push_back(std::move(soundness));

	auto paper_probe = CheckOutcome::make("paper_bound_counterexamples", 0.0, 0.0);
	paper_probe.details = {{"trials", cfg.counterexample_trials}, {"witnesses", paper.size()}};
	paper_probe.witness = s.first_paper_witness;
	s.informational.push_back(std::move(paper_probe));
	return s;
}

inline json summary_to_json(VerifySummary const& s, VerifyConfig const& cfg) {
	json mandatory = json::array(), informational = json::array();
	for (auto const& c : s.mandatory) mandatory.push_back(outcome_to_json(c));
	for (auto const& c : s.informational) informational.push_back(outcome_to_json(c));
	return {{"rng", Rng::algorithm},
	        {"seed", cfg.seed},
	        {"corpus_size", cfg.corpus_size},
	        {"passed", s.all_mandatory_passed()},
	        {"mandatory", std::move(mandatory)},
	        {"informational", std::move(informational)},
	        {"paper_bound_witnesses", s.paper_witnesses},
	        {"exact_bound_witnesses", s.exact_witnesses}};
}

} // namespace biconn

#endif
