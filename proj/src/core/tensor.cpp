#include "core/tensor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vqts::core {

std::string Tensor3::shape_str() const {
    std::ostringstream os;
    os << "[" << b << "," << c << "," << l << "]";
    return os.str();
}

void check_shape(const Tensor3& t, int b, int c, int l, const std::string& where) {
    if (t.b != b || t.c != c || t.l != l) {
        std::ostringstream os;
        os << where << ": expected shape [" << b << "," << c << "," << l << "], got "
           << t.shape_str();
        throw std::invalid_argument(os.str());
    }
}

bool all_finite(const Tensor3& t) {
    for (double x : t.v)
        if (!std::isfinite(x)) return false;
    return true;
}

Tensor3 concat_channels(const Tensor3& a, const Tensor3& b) {
    if (a.b != b.b || a.l != b.l)
        throw std::invalid_argument("concat_channels: batch/length mismatch " + a.shape_str() +
                                    " vs " + b.shape_str());
    Tensor3 out(a.b, a.c + b.c, a.l);
    for (int bi = 0; bi < a.b; ++bi) {
        for (int ci = 0; ci < a.c; ++ci)
            for (int li = 0; li < a.l; ++li) out.at(bi, ci, li) = a.at(bi, ci, li);
        for (int ci = 0; ci < b.c; ++ci)
            for (int li = 0; li < a.l; ++li) out.at(bi, a.c + ci, li) = b.at(bi, ci, li);
    }
    return out;
}

std::pair<Tensor3, Tensor3> split_channels(const Tensor3& x, int c_first) {
    if (c_first <= 0 || c_first >= x.c)
        throw std::invalid_argument("split_channels: bad split point");
    Tensor3 a(x.b, c_first, x.l), b(x.b, x.c - c_first, x.l);
    for (int bi = 0; bi < x.b; ++bi) {
        for (int ci = 0; ci < c_first; ++ci)
            for (int li = 0; li < x.l; ++li) a.at(bi, ci, li) = x.at(bi, ci, li);
        for (int ci = c_first; ci < x.c; ++ci)
            for (int li = 0; li < x.l; ++li) b.at(bi, ci - c_first, li) = x.at(bi, ci, li);
    }
    return {std::move(a), std::move(b)};
}

}  // namespace vqts::core
