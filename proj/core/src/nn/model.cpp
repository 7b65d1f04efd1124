#include "macrocast/nn/model.hpp"

#include "macrocast/errors.hpp"
#include "macrocast/nn/ffn.hpp"

namespace macrocast::nn {

void Model::check_cache(const ForwardCache& cache, const void* self) const {
  if (cache.owner != self)
    throw StructuralError("forward cache does not belong to this model");
  if (cache.batch < 0) throw StructuralError("forward cache is empty or stale");
}

Eigen::VectorXd predict_flat(const Model& model, const Eigen::MatrixXd& flat) {
  if (const auto* ffn = dynamic_cast<const FfnModel*>(&model))
    return ffn->forward_flat(flat);
  if (flat.rows() % dataset::kSequenceLength != 0)
    throw StructuralError("predict_flat: rows not divisible by sequence length");
  auto tensor = dataset::unflatten(flat, flat.rows() / dataset::kSequenceLength);
  return model.forward(tensor, nullptr, nullptr);
}

}  // namespace macrocast::nn
