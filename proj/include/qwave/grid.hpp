#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwave/quaternion.hpp"

namespace qwave {

/// Dense row-major 2D array.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_{rows}, cols_{cols}, data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    T& at(std::size_t r, std::size_t c)
    {
        check(r, c);
        return (*this)(r, c);
    }
    const T& at(std::size_t r, std::size_t c) const
    {
        check(r, c);
        return (*this)(r, c);
    }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }

    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }

    bool same_shape(const Grid& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    bool operator==(const Grid&) const = default;

private:
    void check(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("grid index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QuaternionGrid = Grid<Quaternion>;
using Plane = Grid<double>;

inline double max_modulus_diff(const QuaternionGrid& x, const QuaternionGrid& y)
{
    if (!x.same_shape(y))
        throw std::invalid_argument("grids differ in shape");
    double worst = 0.0;
    auto xv = x.values();
    auto yv = y.values();
    for (std::size_t i = 0; i < xv.size(); ++i) {
        const double e = modulus(xv[i] - yv[i]);
        if (e > worst)
            worst = e;
    }
    return worst;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Smallest k with 2^k >= n.
inline int ceil_log2(std::size_t n)
{
    int k = 0;
    while ((std::size_t{1} << k) < n)
        ++k;
    return k;
}

} // namespace qwave
