#include "nmfgame/mat.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "nmfgame/kernels.hpp"

namespace nmfgame {

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw ShapeError("data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double Mat::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : data_) m = v < m ? v : m;
    return m;
}

double Mat::max_value() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : data_) m = v > m ? v : m;
    return m;
}

NonNegMat::NonNegMat(std::size_t rows, std::size_t cols, double fill) : Mat(rows, cols, fill) {
    if (fill < 0.0) throw ArgumentError("NonNegMat fill must be >= 0");
}

NonNegMat NonNegMat::checked(Mat m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!(m(i, j) >= 0.0))
                throw ArgumentError("negative entry at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    return NonNegMat(std::move(m));
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Mat c(a.rows(), b.cols());
    kernels::active_ops().matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

NonNegMat clamp_nonneg(const Mat& a) {
    Mat out(a.rows(), a.cols());
    kernels::active_ops().clamp_nonneg(a.data(), out.data(), a.size());
    return NonNegMat(std::move(out));
}

double frobenius_norm(const Mat& m) {
    double s = 0.0;
    const double* p = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

double reconstruction_error(const Mat& x, const NonNegMat& w, const NonNegMat& h) {
    if (w.rows() != x.rows() || h.cols() != x.cols() || w.cols() != h.rows())
        throw ShapeError("reconstruction_error shapes do not conform");
    Mat wh = matmul(w, h);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x.data()[i] - wh.data()[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Mat rand_uniform(Rng& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
    if (!(lo < hi)) throw ArgumentError("rand_uniform requires lo < hi");
    Mat m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(lo, hi);
    return m;
}

void write_mat(std::ostream& os, const Mat& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    os << std::setprecision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
}

Mat read_mat(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols)) throw ArgumentError("matrix header: expected 'rows cols'");
    Mat m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!(is >> m.data()[i]))
            throw ArgumentError("matrix body: expected " + std::to_string(m.size()) + " values");
    return m;
}

void save_mat(const std::string& path, const Mat& m) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot open for write: " + path);
    write_mat(f, m);
}

Mat load_mat(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot open for read: " + path);
    return read_mat(f);
}

}  // namespace nmfgame
