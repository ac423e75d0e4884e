// sampling.hpp — Random states, Hamiltonians and Haar unitaries for oracles

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qcool/linalg.hpp"

namespace qcool::sampling {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Complex Ginibre matrix with unit-variance entries.
CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix of R's diagonal).
CMatrix haar_unitary(Eigen::Index dim, Rng& rng);

// Full-rank density matrix G G^dagger / tr(G G^dagger) (Hilbert-Schmidt measure).
CMatrix random_density_matrix(Eigen::Index dim, Rng& rng);

// Hermitian matrix (G + G^dagger)/2 scaled by `scale`.
CMatrix random_hermitian(Eigen::Index dim, Rng& rng, double scale = 1.0);

// Probability vector drawn uniformly from the simplex; optionally with zeros.
std::vector<double> random_distribution(std::size_t n, Rng& rng, double zero_prob = 0.0);

} // namespace qcool::sampling
