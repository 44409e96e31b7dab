#pragma once

// Gaussian IFC-CR channel representation and mutual-information engines.
//
// Two routes are provided for every scalar-output query:
//   * a general log-determinant engine over a labelled joint covariance
//     (JointCovariance / mutual_info), used for auxiliaries and as oracle;
//   * a closed-form residual-variance route for queries of the form
//     I(Y_k; T | G) with T, G subsets of {X1, X2, Xc} (rx_mutual_info),
//     used in optimization loops.
//
// Conventions: proper complex Gaussians, rates in bits (log2, no 1/2).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifccr/errors.hpp"

namespace ifccr {

using cplx = std::complex<double>;

inline constexpr double kEigenFloor = 1e-12;

/// C(x) = log2(1 + x).
inline double cap(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("cap: argument must be finite and nonnegative");
    }
    return std::log2(1.0 + x);
}

namespace detail {

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double phase_or_zero(cplx z) { return z == cplx{} ? 0.0 : std::arg(z); }

inline cplx unit_phasor(double angle) { return std::polar(1.0, angle); }

}  // namespace detail

/// Channel with arbitrary complex gains, powers and noise variances.
struct GeneralChannel {
    cplx g11{}, g12{}, g21{}, g22{}, g1c{}, g2c{};
    double P1 = 1.0, P2 = 1.0, Pc = 1.0;
    double s1sq = 1.0, s2sq = 1.0;

    void validate() const {
        for (double v : {P1, P2, Pc, s1sq, s2sq}) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw DomainError("GeneralChannel: powers and noise variances must be finite and > 0");
            }
        }
        for (cplx g : {g11, g12, g21, g22, g1c, g2c}) {
            if (!detail::finite(g)) throw DomainError("GeneralChannel: gains must be finite");
        }
    }
};

/// Standard-form gains: unit powers, unit noise, direct and relay links real
/// and nonnegative.
struct ChannelGains {
    double h11 = 0.0;
    cplx h12{};
    cplx h21{};
    double h22 = 0.0;
    double h1c = 0.0;
    double h2c = 0.0;

    void validate() const {
        for (double v : {h11, h22, h1c, h2c}) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw DomainError("ChannelGains: h11, h22, h1c, h2c must be finite and >= 0");
            }
        }
        if (!detail::finite(h12) || !detail::finite(h21)) {
            throw DomainError("ChannelGains: cross gains must be finite");
        }
    }

    /// Relabel user 1 <-> user 2.
    ChannelGains swapped() const { return {h22, h21, h12, h11, h2c, h1c}; }

    bool operator==(const ChannelGains&) const = default;
};

/// Correlation coefficients of the relay input with X1 and X2:
/// E[X1 Xc*] = beta1, E[X2 Xc*] = beta2.
struct InputCoeffs {
    cplx beta1{};
    cplx beta2{};

    /// Power of the relay component independent of (X1, X2).
    double fresh_power() const { return 1.0 - std::norm(beta1) - std::norm(beta2); }

    void validate() const {
        if (!detail::finite(beta1) || !detail::finite(beta2)) {
            throw DomainError("InputCoeffs: coefficients must be finite");
        }
        if (fresh_power() < -1e-12) {
            throw DomainError("InputCoeffs: |beta1|^2 + |beta2|^2 must not exceed 1");
        }
    }

    InputCoeffs swapped() const { return {beta2, beta1}; }
};

/// E[Z1 Z2*] (or the coupling of an output with a surrogate output).
struct NoiseCorr {
    cplx r{};

    void validate() const {
        if (!detail::finite(r) || std::abs(r) > 1.0 + 1e-12) {
            throw DomainError("NoiseCorr: |r| must not exceed 1");
        }
    }
};

/// 3x3 covariance of (X1, X2, Xc) in standard coordinates.
inline Eigen::Matrix3cd input_covariance(const InputCoeffs& c) {
    Eigen::Matrix3cd s;
    s << 1.0, 0.0, c.beta1,
         0.0, 1.0, c.beta2,
         std::conj(c.beta1), std::conj(c.beta2), 1.0;
    return s;
}

/// Phase bookkeeping of the standard-form transformation.
///
/// Physical inputs relate to standard ones as X~_j = sqrt(P_j) e^{i theta_j} X_j
/// (theta_c = 0) and outputs as Y_k = e^{-i psi_k} Y~_k / sigma_k.
struct StandardFormMap {
    double theta1 = 0.0, theta2 = 0.0;
    double psi1 = 0.0, psi2 = 0.0;

    static StandardFormMap of(const GeneralChannel& ch) {
        StandardFormMap m;
        m.psi1 = detail::phase_or_zero(ch.g1c);
        m.psi2 = detail::phase_or_zero(ch.g2c);
        m.theta1 = m.psi1 - detail::phase_or_zero(ch.g11);
        m.theta2 = m.psi2 - detail::phase_or_zero(ch.g22);
        return m;
    }

    /// Normalized physical correlations E[X~_j X~_c*] / sqrt(P_j Pc) for
    /// standard-form coefficients.
    InputCoeffs to_physical(const InputCoeffs& standard) const {
        return {standard.beta1 * detail::unit_phasor(theta1),
                standard.beta2 * detail::unit_phasor(theta2)};
    }

    InputCoeffs to_standard(const InputCoeffs& physical) const {
        return {physical.beta1 * detail::unit_phasor(-theta1),
                physical.beta2 * detail::unit_phasor(-theta2)};
    }
};

inline ChannelGains to_standard_form(const GeneralChannel& ch) {
    ch.validate();
    const StandardFormMap m = StandardFormMap::of(ch);
    const double s1 = std::sqrt(ch.s1sq);
    const double s2 = std::sqrt(ch.s2sq);
    ChannelGains g;
    g.h11 = std::sqrt(ch.P1) * std::abs(ch.g11) / s1;
    g.h22 = std::sqrt(ch.P2) * std::abs(ch.g22) / s2;
    g.h1c = std::sqrt(ch.Pc) * std::abs(ch.g1c) / s1;
    g.h2c = std::sqrt(ch.Pc) * std::abs(ch.g2c) / s2;
    g.h12 = std::sqrt(ch.P2) * ch.g12 * detail::unit_phasor(m.theta2 - m.psi1) / s1;
    g.h21 = std::sqrt(ch.P1) * ch.g21 * detail::unit_phasor(m.theta1 - m.psi2) / s2;
    return g;
}

enum class Rx { one = 0, two = 1 };

inline Rx other(Rx rx) { return rx == Rx::one ? Rx::two : Rx::one; }

/// Linear Gaussian channel Y_k = sum_j gain(k, j) X~_j + Z_k over the unit-power
/// physical inputs X~ = (X~1, X~2, X~c), parameterized by standard-form
/// coefficients. Standard-form channels have unit noise and zero phases.
struct LinearModel {
    Eigen::Matrix<cplx, 2, 3> gain = Eigen::Matrix<cplx, 2, 3>::Zero();
    std::array<double, 2> noise_var{1.0, 1.0};
    // Physical input phases e^{i theta_j}, applied to standard-form betas.
    std::array<cplx, 2> input_phase{cplx{1.0}, cplx{1.0}};
    // e^{i (psi1 - psi2)}: maps a standard-form noise correlation to the
    // physical one.
    cplx noise_phase{1.0};

    static LinearModel standard(const ChannelGains& g) {
        g.validate();
        LinearModel m;
        m.gain << g.h11, g.h12, g.h1c,
                  g.h21, g.h22, g.h2c;
        return m;
    }

    static LinearModel physical(const GeneralChannel& ch) {
        ch.validate();
        const StandardFormMap map = StandardFormMap::of(ch);
        LinearModel m;
        const double a1 = std::sqrt(ch.P1), a2 = std::sqrt(ch.P2), ac = std::sqrt(ch.Pc);
        m.gain << ch.g11 * a1, ch.g12 * a2, ch.g1c * ac,
                  ch.g21 * a1, ch.g22 * a2, ch.g2c * ac;
        m.noise_var = {ch.s1sq, ch.s2sq};
        m.input_phase = {detail::unit_phasor(map.theta1), detail::unit_phasor(map.theta2)};
        m.noise_phase = detail::unit_phasor(map.psi1 - map.psi2);
        return m;
    }

    InputCoeffs physical_coeffs(const InputCoeffs& c) const {
        return {c.beta1 * input_phase[0], c.beta2 * input_phase[1]};
    }

    LinearModel swapped() const {
        LinearModel s;
        s.gain << gain(1, 1), gain(1, 0), gain(1, 2),
                  gain(0, 1), gain(0, 0), gain(0, 2);
        s.noise_var = {noise_var[1], noise_var[0]};
        s.input_phase = {input_phase[1], input_phase[0]};
        s.noise_phase = std::conj(noise_phase);
        return s;
    }
};

// ---------------------------------------------------------------------------
// Closed-form residual-variance route.

enum InputVar : unsigned { kX1 = 1u, kX2 = 2u, kXc = 4u, kAllInputs = 7u };

namespace detail {

// Coefficients over the independent unit components (X1, X2, Xc_fresh).
using Comp = std::array<cplx, 3>;

inline Comp relay_components(const InputCoeffs& phys) {
    return {std::conj(phys.beta1), std::conj(phys.beta2),
            cplx{std::sqrt(std::max(phys.fresh_power(), 0.0))}};
}

inline Comp output_components(const LinearModel& m, const InputCoeffs& phys, Rx rx) {
    const int k = static_cast<int>(rx);
    const Comp xc = relay_components(phys);
    Comp y;
    for (int i = 0; i < 3; ++i) y[i] = m.gain(k, 2) * xc[i];
    y[0] += m.gain(k, 0);
    y[1] += m.gain(k, 1);
    return y;
}

inline void remove_given_sources(Comp& v, unsigned given) {
    if (given & kX1) v[0] = 0.0;
    if (given & kX2) v[1] = 0.0;
}

inline double norm2(const Comp& v) { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }

inline cplx inner(const Comp& a, const Comp& b) {
    return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
}

// Residual of the signal part of y after conditioning on `given`.
inline Comp residual(Comp y, Comp xc, unsigned given) {
    remove_given_sources(y, given);
    if (given & kXc) {
        remove_given_sources(xc, given);
        const double px = norm2(xc);
        if (px > kEigenFloor) {
            const cplx proj = inner(y, xc) / px;
            for (int i = 0; i < 3; ++i) y[i] -= proj * xc[i];
        }
    }
    return y;
}

}  // namespace detail

/// Var[Y_rx | given], `given` a bitmask over {X1, X2, Xc}.
inline double output_variance(const LinearModel& m, const InputCoeffs& coeffs, Rx rx, unsigned given) {
    const InputCoeffs phys = m.physical_coeffs(coeffs);
    const detail::Comp y =
        detail::residual(detail::output_components(m, phys, rx), detail::relay_components(phys), given);
    return m.noise_var[static_cast<int>(rx)] + detail::norm2(y);
}

/// I(Y_rx; targets | given) in bits.
inline double rx_mutual_info(const LinearModel& m, const InputCoeffs& coeffs, Rx rx, unsigned targets,
                             unsigned given = 0u) {
    targets &= ~given;
    if (targets == 0u) return 0.0;
    const double before = output_variance(m, coeffs, rx, given);
    const double after = output_variance(m, coeffs, rx, given | targets);
    return std::max(0.0, std::log2(before) - std::log2(after));
}

/// I(Y_rx; X_own, Xc | Y~_other, X_other): the second term of the Sato-type
/// sum bound, with Y~_other the other output whose noise has correlation
/// `r` (standard coordinates) with Z_rx.
inline double sato_conditional_term(const LinearModel& m, const InputCoeffs& coeffs, Rx rx, cplx r) {
    const InputCoeffs phys = m.physical_coeffs(coeffs);
    const unsigned other_input = rx == Rx::one ? kX2 : kX1;
    const detail::Comp xc = detail::relay_components(phys);
    const detail::Comp y = detail::residual(detail::output_components(m, phys, rx), xc, other_input);
    const detail::Comp t = detail::residual(detail::output_components(m, phys, other(rx)), xc, other_input);
    const double n1 = m.noise_var[static_cast<int>(rx)];
    const double n2 = m.noise_var[static_cast<int>(other(rx))];
    const cplx rho = rx == Rx::one ? r * m.noise_phase : r * std::conj(m.noise_phase);
    const double mag2 = std::min(std::norm(rho), 1.0);
    const double syy = detail::norm2(y) + n1;
    const double stt = detail::norm2(t) + n2;
    const cplx syt = detail::inner(y, t) + std::sqrt(n1 * n2) * rho;
    const double det_total = syy * stt - std::norm(syt);
    const double det_noise = n1 * n2 * (1.0 - mag2);
    if (!(det_noise > 0.0) || !(det_total > 0.0)) {
        throw DegenerateInputError("sato_conditional_term: singular surrogate coupling");
    }
    const double v = std::log2(det_total) - std::log2(det_noise) - (std::log2(stt) - std::log2(n2));
    return std::max(0.0, v);
}

// ---------------------------------------------------------------------------
// Log-determinant engine over labelled jointly Gaussian vectors.

using LabelSet = std::vector<std::string>;

struct JointCovariance {
    LabelSet labels;
    Eigen::MatrixXcd matrix;

    int index_of(std::string_view label) const {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) return static_cast<int>(i);
        }
        throw UsageError("JointCovariance: unknown label '" + std::string(label) + "'");
    }

    bool has(std::string_view label) const {
        return std::find(labels.begin(), labels.end(), label) != labels.end();
    }

    cplx at(std::string_view a, std::string_view b) const { return matrix(index_of(a), index_of(b)); }

    void validate() const {
        if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw DomainError("JointCovariance: matrix is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10) {
            throw DomainError("JointCovariance: matrix is not positive semidefinite");
        }
    }
};

/// Variables as linear combinations of independent unit proper Gaussians.
class GaussianSystem {
public:
    int add_source() { return sources_++; }

    void define(std::string label, std::vector<std::pair<int, cplx>> terms) {
        for (const auto& row : rows_) {
            if (row.first == label) throw UsageError("GaussianSystem: duplicate label '" + label + "'");
        }
        rows_.emplace_back(std::move(label), std::move(terms));
    }

    /// Copy of a defined variable's terms (for building combinations).
    const std::vector<std::pair<int, cplx>>& terms(std::string_view label) const {
        for (const auto& row : rows_) {
            if (row.first == label) return row.second;
        }
        throw UsageError("GaussianSystem: unknown label '" + std::string(label) + "'");
    }

    JointCovariance covariance() const {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_.size()), sources_);
        JointCovariance out;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            out.labels.push_back(rows_[i].first);
            for (const auto& [src, coef] : rows_[i].second) a(static_cast<Eigen::Index>(i), src) += coef;
        }
        out.matrix = a * a.adjoint();
        return out;
    }

private:
    int sources_ = 0;
    std::vector<std::pair<std::string, std::vector<std::pair<int, cplx>>>> rows_;
};

/// Combine terms: sum_i w_i * terms_i.
inline std::vector<std::pair<int, cplx>> combine(
    std::initializer_list<std::pair<cplx, const std::vector<std::pair<int, cplx>>*>> parts) {
    std::vector<std::pair<int, cplx>> out;
    for (const auto& [w, t] : parts) {
        for (const auto& [src, c] : *t) out.emplace_back(src, w * c);
    }
    return out;
}

/// Adds Y1, Y2 (and optionally the surrogates Ytil1, Ytil2) to a system that
/// already defines X1, X2, Xc in physical unit-power coordinates.
///
/// Noise structure (standard-coordinate correlation r):
///   E[Z1 Z2*] = r,  E[Z1 Ztil2*] = r,  E[Z2 Ztil1*] = r.
inline void add_channel_outputs(GaussianSystem& sys, const LinearModel& m, cplx r, bool include_surrogates) {
    const cplx rho12 = r * m.noise_phase;
    const cplx rho21 = r * std::conj(m.noise_phase);
    const double s12 = std::sqrt(std::max(0.0, 1.0 - std::norm(rho12)));
    const double s21 = std::sqrt(std::max(0.0, 1.0 - std::norm(rho21)));
    const int w1 = sys.add_source();
    const int w2 = sys.add_source();
    const std::vector<std::pair<int, cplx>> z1{{w1, 1.0}};
    const std::vector<std::pair<int, cplx>> z2{{w1, std::conj(rho12)}, {w2, s12}};

    const auto& x1 = sys.terms("X1");
    const auto& x2 = sys.terms("X2");
    const auto& xc = sys.terms("Xc");
    auto signal = [&](int k) {
        return combine({{m.gain(k, 0), &x1}, {m.gain(k, 1), &x2}, {m.gain(k, 2), &xc}});
    };
    const double sd1 = std::sqrt(m.noise_var[0]);
    const double sd2 = std::sqrt(m.noise_var[1]);
    const auto sig1 = signal(0);
    const auto sig2 = signal(1);
    sys.define("Y1", combine({{1.0, &sig1}, {sd1, &z1}}));
    sys.define("Y2", combine({{1.0, &sig2}, {sd2, &z2}}));
    if (include_surrogates) {
        const int w3 = sys.add_source();
        const int w4 = sys.add_source();
        const std::vector<std::pair<int, cplx>> zt2{{w1, std::conj(rho12)}, {w3, s12}};
        std::vector<std::pair<int, cplx>> zt1 = combine({{std::conj(rho21), &z2}});
        zt1.emplace_back(w4, s21);
        sys.define("Ytil1", combine({{1.0, &sig1}, {sd1, &zt1}}));
        sys.define("Ytil2", combine({{1.0, &sig2}, {sd2, &zt2}}));
    }
}

/// Defines X1, X2 and Xc = conj(b1) X1 + conj(b2) X2 + sqrt(1-|b|^2) Xfresh.
inline void add_inputs(GaussianSystem& sys, const InputCoeffs& phys) {
    phys.validate();
    const int x1 = sys.add_source();
    const int x2 = sys.add_source();
    const int xf = sys.add_source();
    sys.define("X1", {{x1, 1.0}});
    sys.define("X2", {{x2, 1.0}});
    sys.define("Xc", {{x1, std::conj(phys.beta1)},
                      {x2, std::conj(phys.beta2)},
                      {xf, std::sqrt(std::max(phys.fresh_power(), 0.0))}});
}

/// Covariance of (X1, X2, Xc, Y1, Y2[, Ytil1, Ytil2]).
inline JointCovariance build_joint_covariance(const LinearModel& m, const InputCoeffs& coeffs,
                                              const NoiseCorr& noise, bool include_surrogates) {
    coeffs.validate();
    noise.validate();
    GaussianSystem sys;
    add_inputs(sys, m.physical_coeffs(coeffs));
    add_channel_outputs(sys, m, noise.r, include_surrogates);
    return sys.covariance();
}

inline JointCovariance build_joint_covariance(const ChannelGains& g, const InputCoeffs& coeffs,
                                              const NoiseCorr& noise = {}, bool include_surrogates = false) {
    return build_joint_covariance(LinearModel::standard(g), coeffs, noise, include_surrogates);
}

namespace detail {

inline std::vector<int> indices(const JointCovariance& cov, const LabelSet& labels) {
    std::vector<int> out;
    for (const auto& l : labels) {
        const int i = cov.index_of(l);
        if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    }
    return out;
}

inline std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int i : a) {
        if (std::find(b.begin(), b.end(), i) == b.end()) out.push_back(i);
    }
    return out;
}

inline Eigen::MatrixXcd block(const Eigen::MatrixXcd& m, const std::vector<int>& r, const std::vector<int>& c) {
    Eigen::MatrixXcd out(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = m(r[i], c[j]);
    }
    return out;
}

// Pseudo-inverse of a Hermitian PSD matrix with an eigenvalue floor.
inline Eigen::MatrixXcd psd_pinv(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double floor = kEigenFloor * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::VectorXd inv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) inv(i) = ev(i) > floor ? 1.0 / ev(i) : 0.0;
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

inline Eigen::MatrixXcd conditional(const Eigen::MatrixXcd& s, const std::vector<int>& a, const std::vector<int>& c) {
    Eigen::MatrixXcd saa = block(s, a, a);
    if (c.empty()) return saa;
    const Eigen::MatrixXcd sac = block(s, a, c);
    saa -= sac * psd_pinv(block(s, c, c)) * sac.adjoint();
    return 0.5 * (saa + saa.adjoint());
}

}  // namespace detail

/// I(A; B | C) in bits for jointly proper-complex Gaussian variables.
///
/// Labels shared with C are removed from A and B. Directions of A that are
/// deterministic given C carry no information and are projected out;
/// a direction of A that becomes deterministic only once B is known makes
/// the information infinite and raises DegenerateInputError.
inline double mutual_info(const JointCovariance& cov, const LabelSet& a, const LabelSet& b, const LabelSet& c = {}) {
    const std::vector<int> ci = detail::indices(cov, c);
    const std::vector<int> ai = detail::minus(detail::indices(cov, a), ci);
    const std::vector<int> bi = detail::minus(detail::indices(cov, b), ci);
    if (ai.empty() || bi.empty()) return 0.0;
    for (int i : ai) {
        if (std::find(bi.begin(), bi.end(), i) != bi.end()) {
            throw DegenerateInputError("mutual_info: variable '" + cov.labels[i] + "' on both sides");
        }
    }
    std::vector<int> bc = bi;
    bc.insert(bc.end(), ci.begin(), ci.end());

    const Eigen::MatrixXcd given_c = detail::conditional(cov.matrix, ai, ci);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(given_c);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double floor = kEigenFloor * std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > floor) keep.push_back(i);
    }
    if (keep.empty()) return 0.0;
    Eigen::MatrixXcd q(given_c.rows(), static_cast<Eigen::Index>(keep.size()));
    double logdet_c = 0.0;
    for (std::size_t j = 0; j < keep.size(); ++j) {
        q.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
        logdet_c += std::log2(ev(keep[j]));
    }
    const Eigen::MatrixXcd given_bc = q.adjoint() * detail::conditional(cov.matrix, ai, bc) * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(0.5 * (given_bc + given_bc.adjoint()), Eigen::EigenvaluesOnly);
    double logdet_bc = 0.0;
    for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i) {
        const double v = es2.eigenvalues()(i);
        if (!(v > floor)) {
            throw DegenerateInputError("mutual_info: target determined by conditioning set (infinite information)");
        }
        logdet_bc += std::log2(v);
    }
    return std::max(0.0, logdet_c - logdet_bc);
}

}  // namespace ifccr

namespace ifccr {

/// A channel as seen by the evaluators: standard-form gains for closed forms
/// and regime tests, plus the linear model all mutual informations run on.
struct Channel {
    ChannelGains gains;
    LinearModel model;

    static Channel standard(const ChannelGains& g) { return {g, LinearModel::standard(g)}; }

    static Channel general(const GeneralChannel& ch) { return {to_standard_form(ch), LinearModel::physical(ch)}; }

    /// True when the standard-form cross gains are real, so real inputs suffice
    /// for the sweeps' default real mode.
    bool real_valued() const { return gains.h12.imag() == 0.0 && gains.h21.imag() == 0.0; }

    Channel swapped() const { return {gains.swapped(), model.swapped()}; }
};

}  // namespace ifccr
