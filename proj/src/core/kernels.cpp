#include "core/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace vqts::core::kernels {

namespace {
std::atomic<bool> g_parallel{true};

bool env_disables_parallel() {
    const char* e = std::getenv("VQTS_SERIAL");
    return e != nullptr && e[0] == '1';
}
const bool g_env_serial = env_disables_parallel();

inline int conv_out_len(int l, int k, int stride, int pad) {
    return (l + 2 * pad - k) / stride + 1;
}
}  // namespace

bool parallel_enabled() { return g_parallel.load() && !g_env_serial; }
void set_parallel(bool on) { g_parallel.store(on); }

// ---------------------------------------------------------------- conv1d

static inline void conv1d_fwd_one(const Tensor3& x, const std::vector<double>& w,
                                  const std::vector<double>& bias, int k, int stride, int pad,
                                  Tensor3& y, int bi, int co) {
    const int cin = x.c, lout = y.l;
    for (int t = 0; t < lout; ++t) {
        double acc = bias[co];
        const int base = t * stride - pad;
        for (int ci = 0; ci < cin; ++ci) {
            const double* wrow = &w[(static_cast<size_t>(co) * cin + ci) * k];
            for (int j = 0; j < k; ++j) {
                const int s = base + j;
                if (s >= 0 && s < x.l) acc += wrow[j] * x.at(bi, ci, s);
            }
        }
        y.at(bi, co, t) = acc;
    }
}

void conv1d_forward_serial(const Tensor3& x, const std::vector<double>& w,
                           const std::vector<double>& bias, int cout, int k, int stride, int pad,
                           Tensor3& y) {
    y = Tensor3(x.b, cout, conv_out_len(x.l, k, stride, pad));
    for (int bi = 0; bi < x.b; ++bi)
        for (int co = 0; co < cout; ++co) conv1d_fwd_one(x, w, bias, k, stride, pad, y, bi, co);
}

void conv1d_forward_omp(const Tensor3& x, const std::vector<double>& w,
                        const std::vector<double>& bias, int cout, int k, int stride, int pad,
                        Tensor3& y) {
    y = Tensor3(x.b, cout, conv_out_len(x.l, k, stride, pad));
#pragma omp parallel for collapse(2) schedule(static)
    for (int bi = 0; bi < x.b; ++bi)
        for (int co = 0; co < cout; ++co) conv1d_fwd_one(x, w, bias, k, stride, pad, y, bi, co);
}

void conv1d_forward(const Tensor3& x, const std::vector<double>& w,
                    const std::vector<double>& bias, int cout, int k, int stride, int pad,
                    Tensor3& y) {
    if (parallel_enabled())
        conv1d_forward_omp(x, w, bias, cout, k, stride, pad, y);
    else
        conv1d_forward_serial(x, w, bias, cout, k, stride, pad, y);
}

static inline void conv1d_bwd_in_one(const Tensor3& gy, const std::vector<double>& w, int k,
                                     int stride, int pad, Tensor3& gx, int bi, int ci) {
    const int cout = gy.c, cin = gx.c;
    for (int s = 0; s < gx.l; ++s) {
        double acc = 0.0;
        for (int co = 0; co < cout; ++co) {
            const double* wrow = &w[(static_cast<size_t>(co) * cin + ci) * k];
            for (int j = 0; j < k; ++j) {
                const int num = s + pad - j;
                if (num < 0 || num % stride != 0) continue;
                const int t = num / stride;
                if (t < gy.l) acc += wrow[j] * gy.at(bi, co, t);
            }
        }
        gx.at(bi, ci, s) = acc;
    }
}

void conv1d_backward_input_serial(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                                  int stride, int pad, Tensor3& gx) {
    for (int bi = 0; bi < gy.b; ++bi)
        for (int ci = 0; ci < cin; ++ci) conv1d_bwd_in_one(gy, w, k, stride, pad, gx, bi, ci);
}

void conv1d_backward_input_omp(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                               int stride, int pad, Tensor3& gx) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int bi = 0; bi < gy.b; ++bi)
        for (int ci = 0; ci < cin; ++ci) conv1d_bwd_in_one(gy, w, k, stride, pad, gx, bi, ci);
}

void conv1d_backward_input(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                           int stride, int pad, Tensor3& gx) {
    if (parallel_enabled())
        conv1d_backward_input_omp(gy, w, cin, k, stride, pad, gx);
    else
        conv1d_backward_input_serial(gy, w, cin, k, stride, pad, gx);
}

static inline void conv1d_bwd_par_one(const Tensor3& x, const Tensor3& gy, int k, int stride,
                                      int pad, std::vector<double>& gw, std::vector<double>& gb,
                                      int co) {
    const int cin = x.c;
    double gbias = 0.0;
    for (int bi = 0; bi < x.b; ++bi) {
        for (int t = 0; t < gy.l; ++t) {
            const double g = gy.at(bi, co, t);
            gbias += g;
            const int base = t * stride - pad;
            for (int ci = 0; ci < cin; ++ci) {
                double* wrow = &gw[(static_cast<size_t>(co) * cin + ci) * k];
                for (int j = 0; j < k; ++j) {
                    const int s = base + j;
                    if (s >= 0 && s < x.l) wrow[j] += g * x.at(bi, ci, s);
                }
            }
        }
    }
    gb[co] += gbias;
}

void conv1d_backward_params_serial(const Tensor3& x, const Tensor3& gy, int k, int stride, int pad,
                                   std::vector<double>& gw, std::vector<double>& gb) {
    for (int co = 0; co < gy.c; ++co) conv1d_bwd_par_one(x, gy, k, stride, pad, gw, gb, co);
}

void conv1d_backward_params_omp(const Tensor3& x, const Tensor3& gy, int k, int stride, int pad,
                                std::vector<double>& gw, std::vector<double>& gb) {
#pragma omp parallel for schedule(static)
    for (int co = 0; co < gy.c; ++co) conv1d_bwd_par_one(x, gy, k, stride, pad, gw, gb, co);
}

void conv1d_backward_params(const Tensor3& x, const Tensor3& gy, int k, int stride, int pad,
                            std::vector<double>& gw, std::vector<double>& gb) {
    if (parallel_enabled())
        conv1d_backward_params_omp(x, gy, k, stride, pad, gw, gb);
    else
        conv1d_backward_params_serial(x, gy, k, stride, pad, gw, gb);
}

// -------------------------------------------------------------- deconv1d
// Stride-1 transposed convolution; weight layout [Cin,Cout,K].

static inline void deconv1d_fwd_one(const Tensor3& x, const std::vector<double>& w,
                                    const std::vector<double>& bias, int k, int pad, Tensor3& y,
                                    int bi, int co) {
    const int cin = x.c, cout = y.c;
    for (int t = 0; t < y.l; ++t) {
        double acc = bias[co];
        for (int ci = 0; ci < cin; ++ci) {
            const double* wrow = &w[(static_cast<size_t>(ci) * cout + co) * k];
            for (int j = 0; j < k; ++j) {
                const int s = t + pad - j;
                if (s >= 0 && s < x.l) acc += wrow[j] * x.at(bi, ci, s);
            }
        }
        y.at(bi, co, t) = acc;
    }
}

void deconv1d_forward_serial(const Tensor3& x, const std::vector<double>& w,
                             const std::vector<double>& bias, int cout, int k, int pad,
                             Tensor3& y) {
    y = Tensor3(x.b, cout, x.l + k - 1 - 2 * pad);
    for (int bi = 0; bi < x.b; ++bi)
        for (int co = 0; co < cout; ++co) deconv1d_fwd_one(x, w, bias, k, pad, y, bi, co);
}

void deconv1d_forward_omp(const Tensor3& x, const std::vector<double>& w,
                          const std::vector<double>& bias, int cout, int k, int pad, Tensor3& y) {
    y = Tensor3(x.b, cout, x.l + k - 1 - 2 * pad);
#pragma omp parallel for collapse(2) schedule(static)
    for (int bi = 0; bi < x.b; ++bi)
        for (int co = 0; co < cout; ++co) deconv1d_fwd_one(x, w, bias, k, pad, y, bi, co);
}

void deconv1d_forward(const Tensor3& x, const std::vector<double>& w,
                      const std::vector<double>& bias, int cout, int k, int pad, Tensor3& y) {
    if (parallel_enabled())
        deconv1d_forward_omp(x, w, bias, cout, k, pad, y);
    else
        deconv1d_forward_serial(x, w, bias, cout, k, pad, y);
}

static inline void deconv1d_bwd_in_one(const Tensor3& gy, const std::vector<double>& w, int k,
                                       int pad, Tensor3& gx, int bi, int ci) {
    const int cout = gy.c;
    for (int s = 0; s < gx.l; ++s) {
        double acc = 0.0;
        for (int co = 0; co < cout; ++co) {
            const double* wrow = &w[(static_cast<size_t>(ci) * cout + co) * k];
            for (int j = 0; j < k; ++j) {
                const int t = s - pad + j;
                if (t >= 0 && t < gy.l) acc += wrow[j] * gy.at(bi, co, t);
            }
        }
        gx.at(bi, ci, s) = acc;
    }
}

void deconv1d_backward_input_serial(const Tensor3& gy, const std::vector<double>& w, int cin,
                                    int k, int pad, Tensor3& gx) {
    for (int bi = 0; bi < gy.b; ++bi)
        for (int ci = 0; ci < cin; ++ci) deconv1d_bwd_in_one(gy, w, k, pad, gx, bi, ci);
}

void deconv1d_backward_input_omp(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                                 int pad, Tensor3& gx) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int bi = 0; bi < gy.b; ++bi)
        for (int ci = 0; ci < cin; ++ci) deconv1d_bwd_in_one(gy, w, k, pad, gx, bi, ci);
}

void deconv1d_backward_input(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                             int pad, Tensor3& gx) {
    if (parallel_enabled())
        deconv1d_backward_input_omp(gy, w, cin, k, pad, gx);
    else
        deconv1d_backward_input_serial(gy, w, cin, k, pad, gx);
}

static inline void deconv1d_bwd_par_ci(const Tensor3& x, const Tensor3& gy, int k, int pad,
                                       std::vector<double>& gw, int ci) {
    const int cout = gy.c;
    for (int bi = 0; bi < x.b; ++bi) {
        for (int t = 0; t < gy.l; ++t) {
            for (int co = 0; co < cout; ++co) {
                const double g = gy.at(bi, co, t);
                double* wrow = &gw[(static_cast<size_t>(ci) * cout + co) * k];
                for (int j = 0; j < k; ++j) {
                    const int s = t + pad - j;
                    if (s >= 0 && s < x.l) wrow[j] += g * x.at(bi, ci, s);
                }
            }
        }
    }
}

void deconv1d_backward_params_serial(const Tensor3& x, const Tensor3& gy, int k, int pad,
                                     std::vector<double>& gw, std::vector<double>& gb) {
    for (int ci = 0; ci < x.c; ++ci) deconv1d_bwd_par_ci(x, gy, k, pad, gw, ci);
    for (int co = 0; co < gy.c; ++co) {
        double acc = 0.0;
        for (int bi = 0; bi < gy.b; ++bi)
            for (int t = 0; t < gy.l; ++t) acc += gy.at(bi, co, t);
        gb[co] += acc;
    }
}

void deconv1d_backward_params_omp(const Tensor3& x, const Tensor3& gy, int k, int pad,
                                  std::vector<double>& gw, std::vector<double>& gb) {
#pragma omp parallel for schedule(static)
    for (int ci = 0; ci < x.c; ++ci) deconv1d_bwd_par_ci(x, gy, k, pad, gw, ci);
#pragma omp parallel for schedule(static)
    for (int co = 0; co < gy.c; ++co) {
        double acc = 0.0;
        for (int bi = 0; bi < gy.b; ++bi)
            for (int t = 0; t < gy.l; ++t) acc += gy.at(bi, co, t);
        gb[co] += acc;
    }
}

void deconv1d_backward_params(const Tensor3& x, const Tensor3& gy, int k, int pad,
                              std::vector<double>& gw, std::vector<double>& gb) {
    if (parallel_enabled())
        deconv1d_backward_params_omp(x, gy, k, pad, gw, gb);
    else
        deconv1d_backward_params_serial(x, gy, k, pad, gw, gb);
}

// ------------------------------------------------------------- batchnorm

static inline void bn_stats_one(const Tensor3& x, std::vector<double>& mean,
                                std::vector<double>& var, int ci) {
    const double n = static_cast<double>(x.b) * x.l;
    double s = 0.0;
    for (int bi = 0; bi < x.b; ++bi)
        for (int li = 0; li < x.l; ++li) s += x.at(bi, ci, li);
    const double m = s / n;
    double sq = 0.0;
    for (int bi = 0; bi < x.b; ++bi)
        for (int li = 0; li < x.l; ++li) {
            const double d = x.at(bi, ci, li) - m;
            sq += d * d;
        }
    mean[ci] = m;
    var[ci] = sq / n;
}

void batchnorm_stats_serial(const Tensor3& x, std::vector<double>& mean,
                            std::vector<double>& var) {
    mean.assign(x.c, 0.0);
    var.assign(x.c, 0.0);
    for (int ci = 0; ci < x.c; ++ci) bn_stats_one(x, mean, var, ci);
}

void batchnorm_stats_omp(const Tensor3& x, std::vector<double>& mean, std::vector<double>& var) {
    mean.assign(x.c, 0.0);
    var.assign(x.c, 0.0);
#pragma omp parallel for schedule(static)
    for (int ci = 0; ci < x.c; ++ci) bn_stats_one(x, mean, var, ci);
}

void batchnorm_stats(const Tensor3& x, std::vector<double>& mean, std::vector<double>& var) {
    if (parallel_enabled())
        batchnorm_stats_omp(x, mean, var);
    else
        batchnorm_stats_serial(x, mean, var);
}

// ------------------------------------------------------ distance scans

static inline void sqdist_row(const double* q, const double* codes, const double* code_norms,
                              size_t kk, size_t d, double* out) {
    double qn = 0.0;
    for (size_t j = 0; j < d; ++j) qn += q[j] * q[j];
    for (size_t ki = 0; ki < kk; ++ki) {
        const double* e = codes + ki * d;
        double dot = 0.0;
        for (size_t j = 0; j < d; ++j) dot += q[j] * e[j];
        out[ki] = qn - 2.0 * dot + code_norms[ki];
    }
}

void pairwise_sqdist_serial(const double* queries, size_t n, const double* codes, size_t kk,
                            size_t d, double* out) {
    std::vector<double> code_norms(kk, 0.0);
    for (size_t ki = 0; ki < kk; ++ki) {
        double s = 0.0;
        for (size_t j = 0; j < d; ++j) s += codes[ki * d + j] * codes[ki * d + j];
        code_norms[ki] = s;
    }
    for (size_t i = 0; i < n; ++i) sqdist_row(queries + i * d, codes, code_norms.data(), kk, d, out + i * kk);
}

void pairwise_sqdist_omp(const double* queries, size_t n, const double* codes, size_t kk, size_t d,
                         double* out) {
    std::vector<double> code_norms(kk, 0.0);
#pragma omp parallel for schedule(static)
    for (size_t ki = 0; ki < kk; ++ki) {
        double s = 0.0;
        for (size_t j = 0; j < d; ++j) s += codes[ki * d + j] * codes[ki * d + j];
        code_norms[ki] = s;
    }
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < n; ++i) sqdist_row(queries + i * d, codes, code_norms.data(), kk, d, out + i * kk);
}

void pairwise_sqdist(const double* queries, size_t n, const double* codes, size_t kk, size_t d,
                     double* out) {
    if (parallel_enabled())
        pairwise_sqdist_omp(queries, n, codes, kk, d, out);
    else
        pairwise_sqdist_serial(queries, n, codes, kk, d, out);
}

void rowwise_argmin(const double* dist, size_t n, size_t kk, std::vector<int>& out) {
    out.assign(n, 0);
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (size_t i = 0; i < n; ++i) {
        const double* row = dist + i * kk;
        int best = 0;
        double bd = row[0];
        for (size_t ki = 1; ki < kk; ++ki)
            if (row[ki] < bd) {
                bd = row[ki];
                best = static_cast<int>(ki);
            }
        out[i] = best;
    }
}

}  // namespace vqts::core::kernels
