#pragma once

#include <cstddef>
#include <vector>

#include "core/tensor.hpp"

// Hot inner loops, each in a serial reference version and an OpenMP version.
// The OpenMP variants parallelize only over independent output slices and keep
// the inner accumulation order of the serial code, so both produce bit-identical
// results; tests and the bench tool compare the two directly.

namespace vqts::core::kernels {

bool parallel_enabled();
void set_parallel(bool on);

// conv1d: x [B,Cin,L], w [Cout,Cin,K], bias [Cout], zero padding `pad`, output
// length (L + 2*pad - k)/stride + 1.
void conv1d_forward_serial(const Tensor3& x, const std::vector<double>& w,
                           const std::vector<double>& bias, int cout, int k, int stride, int pad,
                           Tensor3& y);
void conv1d_forward_omp(const Tensor3& x, const std::vector<double>& w,
                        const std::vector<double>& bias, int cout, int k, int stride, int pad,
                        Tensor3& y);
void conv1d_forward(const Tensor3& x, const std::vector<double>& w,
                    const std::vector<double>& bias, int cout, int k, int stride, int pad,
                    Tensor3& y);

void conv1d_backward_input_serial(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                                  int stride, int pad, Tensor3& gx);
void conv1d_backward_input_omp(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                               int stride, int pad, Tensor3& gx);
void conv1d_backward_input(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                           int stride, int pad, Tensor3& gx);

// Accumulates into gw/gb (callers zero them between steps).
void conv1d_backward_params_serial(const Tensor3& x, const Tensor3& gy, int k, int stride, int pad,
                                   std::vector<double>& gw, std::vector<double>& gb);
void conv1d_backward_params_omp(const Tensor3& x, const Tensor3& gy, int k, int stride, int pad,
                                std::vector<double>& gw, std::vector<double>& gb);
void conv1d_backward_params(const Tensor3& x, const Tensor3& gy, int k, int stride, int pad,
                            std::vector<double>& gw, std::vector<double>& gb);

// Transposed conv1d, stride 1 only: x [B,Cin,L], w [Cin,Cout,K], output [B,Cout,L+k-1-2*pad].
void deconv1d_forward_serial(const Tensor3& x, const std::vector<double>& w,
                             const std::vector<double>& bias, int cout, int k, int pad, Tensor3& y);
void deconv1d_forward_omp(const Tensor3& x, const std::vector<double>& w,
                          const std::vector<double>& bias, int cout, int k, int pad, Tensor3& y);
void deconv1d_forward(const Tensor3& x, const std::vector<double>& w,
                      const std::vector<double>& bias, int cout, int k, int pad, Tensor3& y);

void deconv1d_backward_input_serial(const Tensor3& gy, const std::vector<double>& w, int cin,
                                    int k, int pad, Tensor3& gx);
void deconv1d_backward_input_omp(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                                 int pad, Tensor3& gx);
void deconv1d_backward_input(const Tensor3& gy, const std::vector<double>& w, int cin, int k,
                             int pad, Tensor3& gx);

void deconv1d_backward_params_serial(const Tensor3& x, const Tensor3& gy, int k, int pad,
                                     std::vector<double>& gw, std::vector<double>& gb);
void deconv1d_backward_params_omp(const Tensor3& x, const Tensor3& gy, int k, int pad,
                                  std::vector<double>& gw, std::vector<double>& gb);
void deconv1d_backward_params(const Tensor3& x, const Tensor3& gy, int k, int pad,
                              std::vector<double>& gw, std::vector<double>& gb);

// Per-channel mean and biased variance over (batch, length).
void batchnorm_stats_serial(const Tensor3& x, std::vector<double>& mean, std::vector<double>& var);
void batchnorm_stats_omp(const Tensor3& x, std::vector<double>& mean, std::vector<double>& var);
void batchnorm_stats(const Tensor3& x, std::vector<double>& mean, std::vector<double>& var);

// Squared Euclidean distances between n queries and kk codes, both dim d,
// via the expanded form |q|^2 - 2 q.e + |e|^2. Row-major [n,kk] output.
void pairwise_sqdist_serial(const double* queries, size_t n, const double* codes, size_t kk,
                            size_t d, double* out);
void pairwise_sqdist_omp(const double* queries, size_t n, const double* codes, size_t kk, size_t d,
                         double* out);
void pairwise_sqdist(const double* queries, size_t n, const double* codes, size_t kk, size_t d,
                     double* out);

// Argmin per row with lowest-index tie break.
void rowwise_argmin(const double* dist, size_t n, size_t kk, std::vector<int>& out);

}  // namespace vqts::core::kernels
