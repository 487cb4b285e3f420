#ifndef BICONN_ERRORS_HPP
#define BICONN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace biconn {

struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Malformed edge lists, matrices violating the graph invariants.
struct GraphConstructionError : Error {
	using Error::Error;
};

// Argument outside the domain of an operation (n too small, i == j, ...).
struct DomainError : Error {
	using Error::Error;
};

// The input graph does not satisfy a structural precondition (connectivity).
struct PreconditionError : Error {
	using Error::Error;
};

struct AsymmetricMatrixError : DomainError {
	AsymmetricMatrixError(double max_asym)
		: DomainError("matrix is not symmetric (max |M - M^T| = " + std::to_string(max_asym) + ")"),
		  max_asymmetry(max_asym) {}
	double max_asymmetry;
};

struct ConvergenceError : Error {
	ConvergenceError(std::string const& what, int iters)
		: Error(what + " did not converge after " + std::to_string(iters) + " iterations"),
		  iterations(iters) {}
	int iterations;
};

// Unreadable or schema-violating input files.
struct FormatError : Error {
	using Error::Error;
};

} // namespace biconn

#endif
