// network.cpp — Driven harmonic networks, reservoirs, spectral densities and damping backends

#include "qcool/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcool/errors.hpp"

namespace qcool::network {

namespace {

void require_square_dim(const RMatrix& m, Eigen::Index n, const char* what) {
    if (m.rows() != n || m.cols() != n) {
        std::ostringstream os;
        os << what << " must be " << n << "x" << n << " (got " << m.rows() << "x" << m.cols() << ")";
        throw InvalidInput(os.str());
    }
}

bool is_psd(const RMatrix& m, double tol) {
    if (m.size() == 0) return true;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return es.eigenvalues().minCoeff() >= -tol * scale;
}

} // namespace

CMatrix NetworkSpec::V(int k) const {
    if (k == 0) return V0.cast<cplx>();
    const auto it = Vk.find(std::abs(k));
    if (it == Vk.end()) return CMatrix::Zero(n_nodes, n_nodes);
    return k > 0 ? it->second : CMatrix(it->second.conjugate());
}

NetworkSpec build_network(const NetworkInput& in) {
    NetworkSpec net;
    const Eigen::Index n = in.V0.rows();
    if (n == 0) throw InvalidInput("network: V0 must be a non-empty square matrix");
    require_square_dim(in.V0, n, "V0");
    net.n_nodes = static_cast<int>(n);

    net.masses = RVector::Ones(n);
    if (!in.masses.empty()) {
        if (static_cast<Eigen::Index>(in.masses.size()) != n) throw InvalidInput("network: masses length differs from V0 size");
        for (Eigen::Index i = 0; i < n; ++i) {
            const double m = in.masses[static_cast<std::size_t>(i)];
            if (!(m > 0.0) || !std::isfinite(m)) throw InvalidInput("network: masses must be positive");
            net.masses(i) = m;
        }
    }

    if (symmetry_defect(in.V0) > kSymmetryTol) throw InvalidInput("network: V0 is not symmetric");
    net.V0 = 0.5 * (in.V0 + in.V0.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(net.V0, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
        throw InvalidInput("network: V0 is not positive definite (static network unstable)");
    }

    bool all_real = true;
    for (const auto& [k, m] : in.Vk) {
        if (k <= 0) throw InvalidInput("network: give V_k for k > 0 only (V_{-k} = conj(V_k) is implied)");
        if (m.rows() != n || m.cols() != n) throw InvalidInput("network: V_k has the wrong shape");
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
            std::ostringstream os;
            os << "network: V_" << k << " is not symmetric";
            throw InvalidInput(os.str());
        }
        if (m.cwiseAbs().maxCoeff() == 0.0) continue;
        if (m.imag().cwiseAbs().maxCoeff() > kSymmetryTol) all_real = false;
        net.Vk[k] = 0.5 * (m + m.transpose());
    }
    if (!net.Vk.empty()) {
        if (!in.omega_d) throw InvalidInput("network: driving components given without omega_d");
        if (!(*in.omega_d > 0.0) || !std::isfinite(*in.omega_d)) throw InvalidInput("network: omega_d must be positive");
    }
    net.omega_d = in.omega_d.value_or(0.0);
    if (in.time_reversal && *in.time_reversal && !all_real) {
        throw InvalidInput("network: time_reversal requires real V_k (V_{-k} = V_k)");
    }
    net.time_reversal = in.time_reversal.value_or(all_real);
    if (net.time_reversal) {
        for (auto& [k, m] : net.Vk) m = m.real().cast<cplx>();
    }
    return net;
}

// ---------------------------------------------------------------------------
// SpectralDensity

SpectralDensity SpectralDensity::delta(double strength, double omega_m, RMatrix weights) {
    SpectralDensity d;
    d.kind = DensityKind::delta_mode;
    d.strength = strength;
    d.omega_m = omega_m;
    d.site_weights = std::move(weights);
    return d;
}

SpectralDensity SpectralDensity::ohmic(double gamma, double cutoff, RMatrix weights) {
    SpectralDensity d;
    d.kind = DensityKind::ohmic;
    d.gamma = gamma;
    d.cutoff = cutoff;
    d.site_weights = std::move(weights);
    return d;
}

SpectralDensity SpectralDensity::flat(double level, RMatrix weights) {
    SpectralDensity d;
    d.kind = DensityKind::flat;
    d.strength = level;
    d.site_weights = std::move(weights);
    return d;
}

SpectralDensity SpectralDensity::table(std::vector<double> omega, std::vector<RMatrix> values) {
    SpectralDensity d;
    d.kind = DensityKind::table;
    d.table_omega = std::move(omega);
    d.table_values = std::move(values);
    if (!d.table_values.empty()) {
        // Support of the table, used for projector checks.
        RMatrix support = RMatrix::Zero(d.table_values.front().rows(), d.table_values.front().cols());
        for (const auto& v : d.table_values) support += v.cwiseAbs();
        d.site_weights = support;
    }
    return d;
}

Eigen::Index SpectralDensity::dim() const {
    if (kind == DensityKind::table && !table_values.empty()) return table_values.front().rows();
    return site_weights.rows();
}

RMatrix SpectralDensity::operator()(double omega) const {
    const Eigen::Index n = dim();
    if (omega <= 0.0) return RMatrix::Zero(n, n);
    switch (kind) {
    case DensityKind::delta_mode:
        throw ContractError("delta_mode spectral density cannot be evaluated pointwise");
    case DensityKind::ohmic: {
        double lorentz = 1.0;
        if (cutoff > 0.0 && std::isfinite(cutoff)) lorentz = cutoff * cutoff / (omega * omega + cutoff * cutoff);
        return (2.0 / std::numbers::pi) * gamma * omega * lorentz * site_weights;
    }
    case DensityKind::flat:
        return strength * site_weights;
    case DensityKind::table: {
        if (omega < table_omega.front() || omega > table_omega.back()) return RMatrix::Zero(n, n);
        auto it = std::upper_bound(table_omega.begin(), table_omega.end(), omega);
        std::size_t i = static_cast<std::size_t>(std::distance(table_omega.begin(), it));
        i = std::clamp<std::size_t>(i, 1, table_omega.size() - 1);
        const double w0 = table_omega[i - 1], w1 = table_omega[i];
        const double s = (omega - w0) / (w1 - w0);
        return (1.0 - s) * table_values[i - 1] + s * table_values[i];
    }
    }
    return RMatrix::Zero(n, n);
}

RMatrix SpectralDensity::delta_weight() const {
    if (kind != DensityKind::delta_mode) throw ContractError("delta_weight requested for a non-delta density");
    return strength * site_weights;
}

void SpectralDensity::validate(Eigen::Index n) const {
    if (kind == DensityKind::table) {
        if (table_omega.size() < 2 || table_omega.size() != table_values.size()) {
            throw InvalidInput("table spectral density needs >= 2 (omega, matrix) samples");
        }
        for (std::size_t i = 0; i < table_omega.size(); ++i) {
            if (!(table_omega[i] >= 0.0) || (i > 0 && !(table_omega[i] > table_omega[i - 1]))) {
                throw InvalidInput("table spectral density: frequencies must be nonnegative and increasing");
            }
            require_square_dim(table_values[i], n, "table spectral density sample");
            if (symmetry_defect(table_values[i]) > kSymmetryTol || !is_psd(table_values[i], 1e-12)) {
                throw InvalidInput("table spectral density: samples must be symmetric PSD");
            }
        }
        return;
    }
    require_square_dim(site_weights, n, "site_weights");
    if (symmetry_defect(site_weights) > kSymmetryTol || !is_psd(site_weights, 1e-12)) {
        throw InvalidInput("site_weights must be symmetric positive semidefinite");
    }
    switch (kind) {
    case DensityKind::delta_mode:
        if (!(strength >= 0.0) || !(omega_m > 0.0)) throw InvalidInput("delta_mode needs strength >= 0 and omega_m > 0");
        break;
    case DensityKind::ohmic:
        if (!(gamma >= 0.0) || !(cutoff >= 0.0)) throw InvalidInput("ohmic density needs gamma >= 0 and cutoff >= 0");
        break;
    case DensityKind::flat:
        if (!(strength >= 0.0)) throw InvalidInput("flat density level must be nonnegative");
        break;
    case DensityKind::table:
        break;
    }
}

// ---------------------------------------------------------------------------
// ReservoirSpec

ReservoirSpec ReservoirSpec::make(std::string label, double temperature, SpectralDensity density,
                                  const std::vector<int>& sites, int n_nodes) {
    ReservoirSpec r;
    r.label = std::move(label);
    r.temperature = temperature;
    r.density = std::move(density);
    r.projector = RMatrix::Zero(n_nodes, n_nodes);
    for (int s : sites) {
        if (s < 0 || s >= n_nodes) throw InvalidInput("reservoir '" + r.label + "': site index out of range");
        r.projector(s, s) = 1.0;
    }
    r.validate(n_nodes);
    return r;
}

void ReservoirSpec::validate(int n_nodes) const {
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw InvalidInput("reservoir '" + label + "': temperature must be finite and >= 0");
    }
    require_square_dim(projector, n_nodes, "reservoir projector");
    if ((projector * projector - projector).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidInput("reservoir '" + label + "': projector is not idempotent");
    }
    density.validate(n_nodes);
    const RMatrix& w = density.site_weights;
    if ((projector * w * projector - w).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidInput("reservoir '" + label + "': spectral density not supported on the declared sites");
    }
}

// ---------------------------------------------------------------------------
// Damping

DampingBackend make_markovian_backend(const NetworkSpec& net, const std::vector<ReservoirSpec>& res) {
    DampingBackend d;
    d.kind = DampingKind::markovian_ohmic;
    d.Gamma = RMatrix::Zero(net.n_nodes, net.n_nodes);
    for (const auto& r : res) {
        if (r.density.kind == DensityKind::ohmic) d.Gamma += r.density.gamma * r.density.site_weights;
    }
    return d;
}

DampingBackend make_phenomenological_backend(const NetworkSpec& net, const RVector& gamma,
                                             const RVector& omega0) {
    DampingBackend d;
    d.kind = DampingKind::phenomenological;
    d.gamma_node = gamma;
    d.omega0_node = omega0;
    validate_backend(net, d);
    return d;
}

void validate_backend(const NetworkSpec& net, const DampingBackend& damping) {
    const Eigen::Index n = net.n_nodes;
    switch (damping.kind) {
    case DampingKind::markovian_ohmic:
        require_square_dim(damping.Gamma, n, "Gamma");
        if (symmetry_defect(damping.Gamma) > kSymmetryTol || !is_psd(damping.Gamma, 1e-12)) {
            throw InvalidInput("Gamma must be symmetric positive semidefinite");
        }
        break;
    case DampingKind::phenomenological: {
        if (damping.gamma_node.size() != n || damping.omega0_node.size() != n) {
            throw InvalidInput("phenomenological backend needs one gamma and omega0 per node");
        }
        if ((damping.gamma_node.array() < 0.0).any() || (damping.omega0_node.array() <= 0.0).any()) {
            throw InvalidInput("phenomenological backend needs gamma >= 0 and omega0 > 0");
        }
        RMatrix off = net.V0;
        off.diagonal().setZero();
        if (off.cwiseAbs().maxCoeff() > kSymmetryTol) {
            throw InvalidInput("phenomenological backend is only valid for uncoupled (diagonal) networks");
        }
        break;
    }
    case DampingKind::tabulated_kernel:
        throw UnsupportedError("tabulated damping kernels are not supported");
    }
}

RMatrix renormalized_potential(const NetworkSpec& net, const DampingBackend& damping) {
    switch (damping.kind) {
    case DampingKind::markovian_ohmic:
        return net.V0;
    case DampingKind::phenomenological:
        return RMatrix(damping.omega0_node.array().square().matrix().asDiagonal());
    case DampingKind::tabulated_kernel:
        break;
    }
    throw UnsupportedError("tabulated damping kernels are not supported");
}

CMatrix Stiffness::operator()(double omega) const {
    CMatrix d = (-omega * omega) * M2.cast<cplx>();
    d += cplx(0.0, omega) * C.cast<cplx>();
    d += K0.cast<cplx>();
    return d;
}

Stiffness dynamic_stiffness(const NetworkSpec& net, const DampingBackend& damping) {
    validate_backend(net, damping);
    Stiffness s;
    const RMatrix m = net.mass_matrix();
    if (damping.kind == DampingKind::markovian_ohmic) {
        s.M2 = m;
        s.C = damping.Gamma;
        s.K0 = net.V0;
        return s;
    }
    // (omega - i gamma)^2 - omega0^2 per node, scaled by the node mass.
    const RVector g = damping.gamma_node, w0 = damping.omega0_node;
    s.M2 = -m;
    s.C = (-2.0 * g.cwiseProduct(net.masses)).asDiagonal();
    s.K0 = (-(g.array().square() + w0.array().square()) * net.masses.array()).matrix().asDiagonal();
    return s;
}

std::vector<double> normal_mode_frequencies(const NetworkSpec& net, const DampingBackend& damping) {
    const RMatrix vr = renormalized_potential(net, damping);
    // M^{-1/2} V_R M^{-1/2} is symmetric with the same spectrum as M^{-1} V_R.
    const RVector inv_sqrt_m = net.masses.cwiseSqrt().cwiseInverse();
    const RMatrix s = inv_sqrt_m.asDiagonal() * vr * inv_sqrt_m.asDiagonal();
    Eigen::SelfAdjointEigenSolver<RMatrix> es(s, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
    return out;
}

} // namespace qcool::network
