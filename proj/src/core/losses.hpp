#pragma once

#include <vector>

#include "core/tensor.hpp"

namespace vqts::core {

struct LossResult {
    double value = 0.0;
    Tensor3 grad;    // d value / d prediction
    Tensor3 elems;   // per-element contributions (zero where masked out)
    bool empty_observed = false;
};

// Mean squared error over entries with mask == 1 only. An empty observed set
// yields value 0 with empty_observed set; batches with a fully-missing
// variable are legitimate under heavy missingness.
LossResult masked_mse(const Tensor3& pred, const Tensor3& target, const Tensor3& mask01);

// Binary cross-entropy on logits with class weights derived from the target
// frequencies over observed entries: w_pos = n/(2*n_pos), w_neg = n/(2*n_neg).
// Exactly balanced classes reduce to plain BCE. mask01 may be null (all observed).
LossResult weighted_bce_logits(const Tensor3& logits, const Tensor3& target01,
                               const Tensor3* mask01);

// Multiclass cross-entropy on logits [B,C,1] with integer labels per batch row.
// Optional per-class weights; loss is the weighted mean over rows.
LossResult cross_entropy(const Tensor3& logits, const std::vector<int>& labels,
                         const std::vector<double>* class_weights = nullptr);

}  // namespace vqts::core
