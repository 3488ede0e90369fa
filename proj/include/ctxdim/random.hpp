#pragma once

#include <cstdint>
#include <random>

#include "ctxdim/hermitian.hpp"

namespace ctxdim {

/// Engine for restart `index` of a run seeded with `seed`. Every restart
/// gets its own stream so results do not depend on evaluation order.
std::mt19937_64 restart_engine(std::uint64_t seed, std::uint64_t index);

/// Matrix of independent standard complex normal entries (unit variance).
CMatrix complex_gaussian(int rows, int cols, std::mt19937_64& rng);

/// L L^dagger with L a rows x rank complex Gaussian matrix.
CMatrix random_psd(int dim, int rank, std::mt19937_64& rng);

/// First `cols` columns of a Haar-random unitary.
CMatrix haar_frame(int dim, int cols, std::mt19937_64& rng);

}  // namespace ctxdim
