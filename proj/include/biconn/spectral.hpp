#ifndef BICONN_SPECTRAL_HPP
#define BICONN_SPECTRAL_HPP

#include "errors.hpp"
#include "graph.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

namespace biconn {

struct Spectrum {
	std::vector<double> eigenvalues;                       // ascending
	std::optional<std::vector<std::vector<double>>> eigenvectors; // eigenvectors[k] pairs with eigenvalues[k]
};

struct GeneralSpectrum {
	std::vector<std::complex<double>> eigenvalues;         // by real part, then imaginary part

	std::vector<double> real_parts() const {
		std::vector<double> out;
		out.reserve(eigenvalues.size());
		for (auto const& z : eigenvalues) out.push_back(z.real());
		return out;
	}
	double max_abs_imag() const {
		double m = 0.0;
		for (auto const& z : eigenvalues) m = std::max(m, std::abs(z.imag()));
		return m;
	}
};

struct Tolerances {
	double symmetry = 1e-10;     // relative, for symmetric_eigen input
	double residual = 1e-8;      // eigenpair residual / multiplicity detection
	double connectivity = 1e-9;  // lambda_2 threshold separating zero from positive
	double strict_margin = 1e-12; // margin on the certificate's strict inequality
};

namespace detail {

constexpr int max_qr_iterations = 60;

// Householder reduction to tridiagonal form. On return v holds the orthogonal
// transform, d the diagonal and e the subdiagonal (e[0] unused).
inline void tridiagonalize(std::vector<std::vector<double>>& v, std::vector<double>& d, std::vector<double>& e) {
	std::size_t const n = d.size();
	for (std::size_t j = 0; j < n; ++j) d[j] = v[n - 1][j];

	for (std::size_t i = n - 1; i > 0; --i) {
		double scale = 0.0, h = 0.0;
		for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
		if (scale == 0.0) {
			e[i] = d[i - 1];
			for (std::size_t j = 0; j < i; ++j) {
				d[j] = v[i - 1][j];
				v[i][j] = 0.0;
				v[j][i] = 0.0;
			}
		} else {
			for (std::size_t k = 0; k < i; ++k) {
				d[k] /= scale;
				h += d[k] * d[k];
			}
			double f = d[i - 1];
			double g = std::sqrt(h);
			if (f > 0) g = -g;
			e[i] = scale * g;
			h -= f * g;
			d[i - 1] = f - g;
			for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

			for (std::size_t j = 0; j < i; ++j) {
				f = d[j];
				v[j][i] = f;
				g = e[j] + v[j][j] * f;
				for (std::size_t k = j + 1; k <= i - 1; ++k) {
					g += v[k][j] * d[k];
					e[k] += v[k][j] * f;
				}
				e[j] = g;
			}
			f = 0.0;
			for (std::size_t j = 0; j < i; ++j) {
				e[j] /= h;
				f += e[j] * d[j];
			}
			double const hh = f / (h + h);
			for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
			for (std::size_t j = 0; j < i; ++j) {
				f = d[j];
				g = e[j];
				for (std::size_t k = j; k <= i - 1; ++k) v[k][j] -= (f * e[k] + g * d[k]);
				d[j] = v[i - 1][j];
				v[i][j] = 0.0;
			}
		}
		d[i] = h;
	}

	// accumulate transformations
	for (std::size_t i = 0; i + 1 < n; ++i) {
		v[n - 1][i] = v[i][i];
		v[i][i] = 1.0;
		double const h = d[i + 1];
		if (h != 0.0) {
			for (std::size_t k = 0; k <= i; ++k) d[k] = v[k][i + 1] / h;
			for (std::size_t j = 0; j <= i; ++j) {
				double g = 0.0;
				for (std::size_t k = 0; k <= i; ++k) g += v[k][i + 1] * v[k][j];
				for (std::size_t k = 0; k <= i; ++k) v[k][j] -= g * d[k];
			}
		}
		for (std::size_t k = 0; k <= i; ++k) v[k][i + 1] = 0.0;
	}
	for (std::size_t j = 0; j < n; ++j) {
		d[j] = v[n - 1][j];
		v[n - 1][j] = 0.0;
	}
	v[n - 1][n - 1] = 1.0;
	e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e); rotations are applied to v
// when want_vectors is set.
inline void tridiagonal_ql(std::vector<std::vector<double>>& v, std::vector<double>& d, std::vector<double>& e,
                           bool want_vectors) {
	std::size_t const n = d.size();
	for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
	e[n - 1] = 0.0;

	double f = 0.0, tst1 = 0.0;
	double const eps = std::numeric_limits<double>::epsilon();
	for (std::size_t l = 0; l < n; ++l) {
		tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
		std::size_t m = l;
		while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

		if (m > l) {
			int iter = 0;
			do {
				if (++iter > 30 * max_qr_iterations) throw ConvergenceError("symmetric tridiagonal QL", iter);
				double g = d[l];
				double p = (d[l + 1] - g) / (2.0 * e[l]);
				double r = std::hypot(p, 1.0);
				if (p < 0) r = -r;
				d[l] = e[l] / (p + r);
				d[l + 1] = e[l] * (p + r);
				double const dl1 = d[l + 1];
				double h = g - d[l];
				for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
				f += h;

				p = d[m];
				double c = 1.0, c2 = c, c3 = c;
				double const el1 = e[l + 1];
				double s = 0.0, s2 = 0.0;
				for (std::size_t ii = m; ii-- > l;) {
					c3 = c2;
					c2 = c;
					s2 = s;
					g = c * e[ii];
					h = c * p;
					r = std::hypot(p, e[ii]);
					e[ii + 1] = s * r;
					s = e[ii] / r;
					c = p / r;
					p = c * d[ii] - s * g;
					d[ii + 1] = h + s * (c * g + s * d[ii]);
					if (want_vectors) {
						for (std::size_t k = 0; k < n; ++k) {
							h = v[k][ii + 1];
							v[k][ii + 1] = s * v[k][ii] + c * h;
							v[k][ii] = c * v[k][ii] - s * h;
						}
					}
				}
				p = -s * s2 * c3 * el1 * e[l] / dl1;
				e[l] = s * p;
				d[l] = c * p;
			} while (std::abs(e[l]) > eps * tst1);
		}
		d[l] += f;
		e[l] = 0.0;
	}
}

// Orthogonal reduction to upper Hessenberg form, in place.
inline void hessenberg(std::vector<std::vector<double>>& h) {
	std::size_t const n = h.size();
	if (n < 3) return;
	std::vector<double> ort(n, 0.0);
	std::size_t const high = n - 1;
	for (std::size_t m = 1; m + 1 <= high; ++m) {
		double scale = 0.0;
		for (std::size_t i = m; i <= high; ++i) scale += std::abs(h[i][m - 1]);
		if (scale == 0.0) continue;
		double hh = 0.0;
		for (std::size_t i = high + 1; i-- > m;) {
			ort[i] = h[i][m - 1] / scale;
			hh += ort[i] * ort[i];
		}
		double g = std::sqrt(hh);
		if (ort[m] > 0) g = -g;
		hh -= ort[m] * g;
		ort[m] -= g;

		for (std::size_t j = m; j < n; ++j) {
			double f = 0.0;
			for (std::size_t i = high + 1; i-- > m;) f += ort[i] * h[i][j];
			f /= hh;
			for (std::size_t i = m; i <= high; ++i) h[i][j] -= f * ort[i];
		}
		for (std::size_t i = 0; i <= high; ++i) {
			double f = 0.0;
			for (std::size_t j = high + 1; j-- > m;) f += ort[j] * h[i][j];
			f /= hh;
			for (std::size_t j = m; j <= high; ++j) h[i][j] -= f * ort[j];
		}
		ort[m] *= scale;
		h[m][m - 1] = scale * g;
	}
	for (std::size_t i = 2; i < n; ++i)
		for (std::size_t j = 0; j + 1 < i; ++j) h[i][j] = 0.0;
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
// Converged 2x2 blocks yield complex conjugate pairs.
inline std::vector<std::complex<double>> hessenberg_qr(std::vector<std::vector<double>>& a) {
	int const n = static_cast<int>(a.size());
	std::vector<double> wr(n, 0.0), wi(n, 0.0);
	double const eps = std::numeric_limits<double>::epsilon();

	double anorm = 0.0;
	for (int i = 0; i < n; ++i)
		for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a[i][j]);

	int nn = n - 1;
	double t = 0.0;
	int total = 0;
	while (nn >= 0) {
		int its = 0;
		int l = 0;
		do {
			for (l = nn; l >= 1; --l) {
				double s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
				if (s == 0.0) s = anorm;
				if (std::abs(a[l][l - 1]) <= eps * s) {
					a[l][l - 1] = 0.0;
					break;
				}
			}
			double x = a[nn][nn];
			if (l == nn) {
				wr[nn] = x + t;
				wi[nn] = 0.0;
				--nn;
			} else {
				double y = a[nn - 1][nn - 1];
				double w = a[nn][nn - 1] * a[nn - 1][nn];
				if (l == nn - 1) {
					double const p = 0.5 * (y - x);
					double const q = p * p + w;
					double z = std::sqrt(std::abs(q));
					x += t;
					if (q >= 0.0) {
						z = p + std::copysign(z, p);
						wr[nn - 1] = wr[nn] = x + z;
						if (z != 0.0) wr[nn] = x - w / z;
						wi[nn - 1] = wi[nn] = 0.0;
					} else {
						wr[nn - 1] = wr[nn] = x + p;
						wi[nn - 1] = z;
						wi[nn] = -z;
					}
					nn -= 2;
				} else {
					if (its == max_qr_iterations) throw ConvergenceError("Hessenberg QR", total);
					if (its == 10 || its == 20) {
						// exceptional shift
						t += x;
						for (int i = 0; i <= nn; ++i) a[i][i] -= x;
						double const s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
						y = x = 0.75 * s;
						w = -0.4375 * s * s;
					}
					++its;
					++total;
					int m = nn - 2;
					double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
					for (; m >= l; --m) {
						z = a[m][m];
						r = x - z;
						double s = y - z;
						p = (r * s - w) / a[m + 1][m] + a[m][m + 1];
						q = a[m + 1][m + 1] - z - r - s;
						r = a[m + 2][m + 1];
						s = std::abs(p) + std::abs(q) + std::abs(r);
						p /= s;
						q /= s;
						r /= s;
						if (m == l) break;
						double const u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
						double const v = std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) + std::abs(a[m + 1][m + 1]));
						if (u <= eps * v) break;
					}
					for (int i = m + 2; i <= nn; ++i) {
						a[i][i - 2] = 0.0;
						if (i != m + 2) a[i][i - 3] = 0.0;
					}
					for (int k = m; k <= nn - 1; ++k) {
						if (k != m) {
							p = a[k][k - 1];
							q = a[k + 1][k - 1];
							r = 0.0;
							if (k != nn - 1) r = a[k + 2][k - 1];
							x = std::abs(p) + std::abs(q) + std::abs(r);
							if (x != 0.0) {
								p /= x;
								q /= x;
								r /= x;
							}
						}
						double const s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
						if (s == 0.0) continue;
						if (k == m) {
							if (l != m) a[k][k - 1] = -a[k][k - 1];
						} else {
							a[k][k - 1] = -s * x;
						}
						p += s;
						x = p / s;
						y = q / s;
						z = r / s;
						q /= p;
						r /= p;
						for (int j = k; j <= nn; ++j) {
							p = a[k][j] + q * a[k + 1][j];
							if (k != nn - 1) {
								p += r * a[k + 2][j];
								a[k + 2][j] -= p * z;
							}
							a[k + 1][j] -= p * y;
							a[k][j] -= p * x;
						}
						int const mmin = nn < k + 3 ? nn : k + 3;
						for (int i = l; i <= mmin; ++i) {
							p = x * a[i][k] + y * a[i][k + 1];
							if (k != nn - 1) {
								p += z * a[i][k + 2];
								a[i][k + 2] -= p * r;
							}
							a[i][k + 1] -= p * q;
							a[i][k] -= p;
						}
					}
				}
			}
		} while (l < nn - 1);
	}

	std::vector<std::complex<double>> out(n);
	for (int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
	return out;
}

inline std::vector<std::vector<double>> to_rows(Matrix const& m) {
	std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
	for (std::size_t i = 0; i < m.rows(); ++i)
		for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
	return rows;
}

} // namespace detail

// Full spectrum of a symmetric matrix, ascending. Input symmetry is checked
// against `tol.symmetry` relative to the largest entry; the solver works on
// the symmetrized matrix (M + M^T) / 2.
inline Spectrum symmetric_eigen(Matrix const& m, bool want_vectors = false, Tolerances const& tol = {}) {
	if (!m.is_square()) throw DomainError("symmetric_eigen requires a square matrix");
	double const asym = m.max_asymmetry();
	if (asym > tol.symmetry * std::max(1.0, m.max_abs())) throw AsymmetricMatrixError(asym);

	std::size_t const n = m.rows();
	Spectrum out;
	if (n == 0) return out;

	auto v = detail::to_rows(m);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j) v[i][j] = v[j][i] = 0.5 * (m(i, j) + m(j, i));
	std::vector<double> d(n), e(n);
	detail::tridiagonalize(v, d, e);
	detail::tridiagonal_ql(v, d, e, want_vectors);

	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

	out.eigenvalues.reserve(n);
	for (std::size_t k : order) out.eigenvalues.push_back(d[k]);
	if (want_vectors) {
		std::vector<std::vector<double>> vecs;
		vecs.reserve(n);
		for (std::size_t k : order) {
			std::vector<double> col(n);
			for (std::size_t r = 0; r < n; ++r) col[r] = v[r][k];
			vecs.push_back(std::move(col));
		}
		out.eigenvectors = std::move(vecs);
	}
	return out;
}

// Eigenvalues of an arbitrary real square matrix.
inline GeneralSpectrum general_eigen(Matrix const& m) {
	if (!m.is_square()) throw DomainError("general_eigen requires a square matrix");
	GeneralSpectrum out;
	if (m.rows() == 0) return out;
	auto h = detail::to_rows(m);
	detail::hessenberg(h);
	out.eigenvalues = detail::hessenberg_qr(h);
	std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](auto const& a, auto const& b) {
		if (a.real() != b.real()) return a.real() < b.real();
		return a.imag() < b.imag();
	});
	return out;
}

inline double algebraic_connectivity(WeightedGraph const& g) {
	if (g.size() < 2) throw DomainError("algebraic connectivity is undefined for n < 2");
	return symmetric_eigen(laplacian(g)).eigenvalues[1];
}

struct FiedlerResult {
	std::vector<double> vector;  // unit norm, orthogonal to the all-ones vector
	double value = 0.0;
	bool simple = true;          // false when lambda_2 is repeated within tolerance
};

inline FiedlerResult fiedler_vector(WeightedGraph const& g, Tolerances const& tol = {}) {
	std::size_t const n = g.size();
	if (n < 2) throw DomainError("Fiedler vector is undefined for n < 2");
	auto const spec = symmetric_eigen(laplacian(g), true, tol);
	auto const& lam = spec.eigenvalues;
	auto const& vecs = *spec.eigenvectors;

	FiedlerResult out;
	out.value = lam[1];
	double const scale = std::max(1.0, std::abs(lam.back()));
	out.simple = std::abs(lam[1] - lam[0]) > tol.residual * scale &&
	             (n < 3 || std::abs(lam[2] - lam[1]) > tol.residual * scale);

	// Inside a repeated null cluster the solver's vector need not be
	// orthogonal to 1; project it out while staying in the eigenspace.
	auto project = [n](std::vector<double> v) {
		double const mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
		for (double& x : v) x -= mean;
		return v;
	};
	std::vector<double> v = project(vecs[1]);
	if (norm2(v) < 1e-6) v = project(vecs[0]);
	double const nv = norm2(v);
	for (double& x : v) x /= nv;
	out.vector = std::move(v);
	return out;
}

inline bool is_connected_spectral(WeightedGraph const& g, double tol = Tolerances{}.connectivity) {
	if (g.size() == 1) return true;
	return algebraic_connectivity(g) > tol;
}

// Connected-component labels by breadth-first search; a link exists iff a_ij > 0.
inline std::vector<std::size_t> component_labels(WeightedGraph const& g) {
	std::size_t const n = g.size();
	constexpr auto unset = std::numeric_limits<std::size_t>::max();
	std::vector<std::size_t> label(n, unset);
	std::size_t next = 0;
	for (std::size_t s = 0; s < n; ++s) {
		if (label[s] != unset) continue;
		std::queue<std::size_t> q;
		q.push(s);
		label[s] = next;
		while (!q.empty()) {
			std::size_t const u = q.front();
			q.pop();
			for (std::size_t v = 0; v < n; ++v)
				if (label[v] == unset && g.weights()(u, v) > 0.0) {
					label[v] = next;
					q.push(v);
				}
		}
		++next;
	}
	return label;
}

inline std::size_t component_count(WeightedGraph const& g) {
	auto const labels = component_labels(g);
	return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

inline bool is_connected_bfs(WeightedGraph const& g) { return component_count(g) == 1; }

} // namespace biconn

#endif
