#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nmfgame/errors.hpp"
#include "nmfgame/rng.hpp"

namespace nmfgame {

// Dense row-major double matrix. The one numerical carrier in the project.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Mat transposed() const;

    // True when every entry is finite.
    bool all_finite() const;
    double min_value() const;
    double max_value() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// A Mat whose entries are all >= 0. Constructed via checked() or clamp_nonneg().
class NonNegMat : public Mat {
public:
    NonNegMat() = default;
    NonNegMat(std::size_t rows, std::size_t cols, double fill = 0.0);

    // Validates the non-negativity invariant; throws ArgumentError on violation.
    static NonNegMat checked(Mat m);

private:
    explicit NonNegMat(Mat&& m) : Mat(std::move(m)) {}
    friend NonNegMat clamp_nonneg(const Mat&);
    friend NonNegMat wrap_nonneg_unchecked(Mat&&);
};

// Internal: wraps a matrix already known to be non-negative (e.g. straight out
// of a clamping kernel). Not part of the public contract.
inline NonNegMat wrap_nonneg_unchecked(Mat&& m) { return NonNegMat(std::move(m)); }

// C = A * B with a fixed left-to-right summation order over the inner index.
Mat matmul(const Mat& a, const Mat& b);

// Elementwise max(0, x). Idempotent.
NonNegMat clamp_nonneg(const Mat& a);

// ||X - WH||_F (non-squared).
double reconstruction_error(const Mat& x, const NonNegMat& w, const NonNegMat& h);

double frobenius_norm(const Mat& m);

// i.i.d. Uniform[lo, hi) entries, drawn in row-major order.
Mat rand_uniform(Rng& rng, std::size_t rows, std::size_t cols, double lo, double hi);

// Plain-text format: first line "rows cols", then one line per row of
// space-separated values at 17 significant digits.
void write_mat(std::ostream& os, const Mat& m);
Mat read_mat(std::istream& is);
void save_mat(const std::string& path, const Mat& m);
Mat load_mat(const std::string& path);

}  // namespace nmfgame
