#pragma once

// Tensor literal text format:
//   {"dim": n, "degree": p, "entries": [{"index": [i1,...,ip], "value": v}]}
// Indices are 1-based and non-decreasing; omitted entries are zero.

#include <string>

#include "ktensor/sym_tensor.hpp"

namespace ktensor {

std::string tensor_to_text(const SymTensor& k);
SymTensor tensor_from_text(const std::string& text);

SymTensor load_tensor_file(const std::string& path);
void save_tensor_file(const std::string& path, const SymTensor& k);

}  // namespace ktensor
