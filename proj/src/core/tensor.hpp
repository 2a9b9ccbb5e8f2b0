#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace vqts::core {

// Dense [batch, channel, length] tensor, row-major with length fastest.
struct Tensor3 {
    int b = 0, c = 0, l = 0;
    std::vector<double> v;

    Tensor3() = default;
    Tensor3(int b_, int c_, int l_)
        : b(b_), c(c_), l(l_), v(static_cast<size_t>(b_) * c_ * l_, 0.0) {}

    double& at(int bi, int ci, int li) {
        return v[(static_cast<size_t>(bi) * c + ci) * l + li];
    }
    double at(int bi, int ci, int li) const {
        return v[(static_cast<size_t>(bi) * c + ci) * l + li];
    }

    size_t size() const { return v.size(); }
    bool same_shape(const Tensor3& o) const { return b == o.b && c == o.c && l == o.l; }
    std::string shape_str() const;

    void fill(double x) { std::fill(v.begin(), v.end(), x); }
};

// Throws std::invalid_argument naming `where` with expected/got shapes.
void check_shape(const Tensor3& t, int b, int c, int l, const std::string& where);

bool all_finite(const Tensor3& t);

// Channel-axis concatenation and its inverse; shapes must agree in b and l.
Tensor3 concat_channels(const Tensor3& a, const Tensor3& b);
std::pair<Tensor3, Tensor3> split_channels(const Tensor3& x, int c_first);

}  // namespace vqts::core
