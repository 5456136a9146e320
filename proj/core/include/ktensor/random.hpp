#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ktensor/frame_tensor.hpp"
#include "ktensor/linalg.hpp"
#include "ktensor/sym_tensor.hpp"

namespace ktensor {

using Rng = std::mt19937_64;

// Per-task stream: seed xor task index, as used by every suite.
inline Rng task_rng(std::uint64_t seed, std::uint64_t task) { return Rng(seed ^ task); }

std::vector<double> random_vector(int n, Rng& rng);
SymTensor random_tensor(int n, int p, Rng& rng);
SymTensor random_trace_free(int n, int p, Rng& rng);
FrameTensor random_frame_tensor(int n, int p, Rng& rng);
FrameTensor random_trace_free_frame_tensor(int n, int p, Rng& rng);
Matrix<double> random_orthogonal(int n, Rng& rng);
Matrix<double> random_skew(int n, Rng& rng);

}  // namespace ktensor
