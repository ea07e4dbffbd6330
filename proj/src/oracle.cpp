#include "discrim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace discrim {

double helstrom_two_state(const Ensemble& e) {
    if (e.size() != 2) {
        std::ostringstream os;
        os << "helstrom_two_state: ensemble has " << e.size()
           << " states, need exactly 2";
        throw DomainError(os.str());
    }
    const Matrix difference =
        e.prior(0) * e.state(0).mat() - e.prior(1) * e.state(1).mat();
    return 0.5 * (1.0 - trace_norm(difference));
}

namespace {

HermitianMatrix dual_operator(const Ensemble& e, const Povm& m) {
    if (m.dim() != e.dim() || m.size() != e.size())
        throw DomainError("dual operator: povm does not match ensemble");
    Matrix y = Matrix::Zero(e.dim(), e.dim());
    for (std::size_t k = 0; k < e.size(); ++k)
        y += e.prior(k) * (e.state(k).mat() * m.effect(k).mat());
    // Finite-precision products drift off Hermitian; take the Hermitian
    // part explicitly.
    return HermitianMatrix(0.5 * (y + y.adjoint().eval()));
}

double residual_against(const Ensemble& e, const HermitianMatrix& y) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < e.size(); ++k) {
        HermitianMatrix gap(e.prior(k) * e.state(k).mat() - y.mat());
        worst = std::max(worst, spectral_decompose(gap).eigenvalues(0));
    }
    return worst;
}

} // namespace

double ykl_residual(const Ensemble& e, const Povm& m) {
    return residual_against(e, dual_operator(e, m));
}

DualBound dual_bound(const Ensemble& e, const Povm& m) {
    const HermitianMatrix y = dual_operator(e, m);
    DualBound bound;
    bound.shift = std::max(0.0, residual_against(e, y));
    const double trace =
        y.trace() + bound.shift * static_cast<double>(e.dim());
    bound.upper_on_success = std::min(1.0, trace);
    return bound;
}

double dual_upper_on_success(const Ensemble& e, const Povm& m) {
    return dual_bound(e, m).upper_on_success;
}

CertifiedInterval certify(const Ensemble& e, double tol, std::size_t max_iter) {
    JrfTrace trace = jrf_converge(e, tol, max_iter);
    Povm witness = std::move(trace.iterates.back());
    const double failure = evaluate(e, witness).failure;
    const DualBound dual = dual_bound(e, witness);

    // When the shift is zero, Tr Y equals the witness success through a
    // different arithmetic route; clamp the 1-ulp crossings that causes.
    const double lower =
        std::min(std::max(0.0, 1.0 - dual.upper_on_success), failure);
    CertifiedInterval interval{.lower = lower,
                               .upper = failure,
                               .witness = std::move(witness),
                               .dual_shift = dual.shift,
                               .iterations = trace.iterations,
                               .converged = trace.converged};
    return interval;
}

} // namespace discrim
