// sampling.cpp — Random states, Hamiltonians and Haar unitaries for oracles

#include "qcool/sampling.hpp"

#include <cmath>

namespace qcool::sampling {

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = cplx(normal(rng), normal(rng));
    return g;
}

CMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
    const CMatrix z = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double a = std::abs(r(i, i));
        const cplx phase = a > 0.0 ? r(i, i) / a : cplx(1.0, 0.0);
        q.col(i) *= phase;
    }
    return q;
}

CMatrix random_density_matrix(Eigen::Index dim, Rng& rng) {
    const CMatrix g = ginibre(dim, dim, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

CMatrix random_hermitian(Eigen::Index dim, Rng& rng, double scale) {
    const CMatrix g = ginibre(dim, dim, rng);
    return 0.5 * scale * (g + g.adjoint());
}

std::vector<double> random_distribution(std::size_t n, Rng& rng, double zero_prob) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> p(n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (zero_prob > 0.0 && unif(rng) < zero_prob) continue;
        p[i] = expo(rng);
        sum += p[i];
    }
    if (sum == 0.0) {
        p[0] = 1.0;
        sum = 1.0;
    }
    for (double& x : p) x /= sum;
    return p;
}

} // namespace qcool::sampling
