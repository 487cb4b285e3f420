#ifndef BICONN_MATRIX_HPP
#define BICONN_MATRIX_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace biconn {

// Dense row-major real matrix. Sizes in this library stay in the hundreds,
// so no expression templates or blocking.
class Matrix {
public:
	Matrix() = default;
	Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
		: rows_(rows), cols_(cols), data_(rows * cols, fill) {}

	Matrix(std::initializer_list<std::initializer_list<double>> init) {
		rows_ = init.size();
		cols_ = rows_ ? init.begin()->size() : 0;
		data_.reserve(rows_ * cols_);
		for (auto const& row : init) {
			assert(row.size() == cols_);
			data_.insert(data_.end(), row.begin(), row.end());
		}
	}

	static Matrix zeros(std::size_t n) { return Matrix(n, n); }
	static Matrix identity(std::size_t n) {
		Matrix m(n, n);
		for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
		return m;
	}
	static Matrix diagonal(std::span<double const> d) {
		Matrix m(d.size(), d.size());
		for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
		return m;
	}
	// u * v^T
	static Matrix outer(std::span<double const> u, std::span<double const> v) {
		Matrix m(u.size(), v.size());
		for (std::size_t i = 0; i < u.size(); ++i)
			for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
		return m;
	}

	std::size_t rows() const noexcept { return rows_; }
	std::size_t cols() const noexcept { return cols_; }
	bool is_square() const noexcept { return rows_ == cols_; }

	double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
	double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

	std::span<double const> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
	std::span<double const> data() const noexcept { return data_; }

	Matrix transpose() const {
		Matrix t(cols_, rows_);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
		return t;
	}

	double trace() const {
		double s = 0.0;
		for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
		return s;
	}

	// Square root of the sum of squared entries.
	double frobenius_norm() const {
		double s = 0.0;
		for (double x : data_) s += x * x;
		return std::sqrt(s);
	}

	double max_abs() const {
		double m = 0.0;
		for (double x : data_) m = std::max(m, std::abs(x));
		return m;
	}

	double max_asymmetry() const {
		assert(is_square());
		double m = 0.0;
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = i + 1; j < cols_; ++j)
				m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
		return m;
	}

	std::vector<double> row_sums() const {
		std::vector<double> s(rows_, 0.0);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
		return s;
	}

	std::vector<double> multiply(std::span<double const> v) const {
		assert(v.size() == cols_);
		std::vector<double> out(rows_, 0.0);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
		return out;
	}

	Matrix& operator+=(Matrix const& o) {
		assert(rows_ == o.rows_ && cols_ == o.cols_);
		for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
		return *this;
	}
	Matrix& operator-=(Matrix const& o) {
		assert(rows_ == o.rows_ && cols_ == o.cols_);
		for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
		return *this;
	}
	Matrix& operator*=(double s) {
		for (double& x : data_) x *= s;
		return *this;
	}

	friend Matrix operator+(Matrix a, Matrix const& b) { return a += b; }
	friend Matrix operator-(Matrix a, Matrix const& b) { return a -= b; }
	friend Matrix operator*(Matrix a, double s) { return a *= s; }
	friend Matrix operator*(double s, Matrix a) { return a *= s; }

	friend Matrix operator*(Matrix const& a, Matrix const& b) {
		assert(a.cols_ == b.rows_);
		Matrix c(a.rows_, b.cols_);
		for (std::size_t i = 0; i < a.rows_; ++i)
			for (std::size_t k = 0; k < a.cols_; ++k) {
				double const aik = a(i, k);
				if (aik == 0.0) continue;
				for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
			}
		return c;
	}

	friend bool operator==(Matrix const&, Matrix const&) = default;

private:
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<double> data_;
};

inline double dot(std::span<double const> a, std::span<double const> b) {
	assert(a.size() == b.size());
	double s = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
	return s;
}

inline double norm2(std::span<double const> a) { return std::sqrt(dot(a, a)); }

} // namespace biconn

#endif
