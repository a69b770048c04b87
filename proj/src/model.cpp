#include "debtrec/model.hpp"

#include <cmath>
#include <string>

#include "debtrec/errors.hpp"

namespace debtrec {

namespace {

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) {
        throw ValidationError(std::string(field) + " must satisfy " + constraint);
    }
}

bool finite(double v) { return std::isfinite(v); }

// Evaluates the mean path point by point, either through the closed form or,
// when that is refused, by stepping the affine map.
class MeanEvaluator {
public:
    MeanEvaluator(const LoanParams& loan, const FiscalParams& fiscal, const MarketParams& market)
        : loan_(loan), matrix_(mean_matrix(loan, fiscal, market)),
          payment_(loan.mean_payment()), state_{loan.e0, loan.m0} {
        const EigenSystem eig = eigensystem(matrix_);
        try {
            coeffs_ = closed_form_coeffs(matrix_, eig, loan);
        } catch (const NearSingularError&) {
            coeffs_.reset();
        }
    }

    // Must be called with t = 1, 2, ... in order.
    MeanPoint next(int t) {
        if (coeffs_) {
            const ClosedFormCoeffs& c = *coeffs_;
            const double p1 = std::pow(c.lambda1, t);
            const double p2 = std::pow(c.lambda2, t);
            return {loan_.e0 * (c.cA * p1 + c.cB * p2 + c.cC),
                    loan_.m0 * (c.cD * p1 + c.cE * p2 + c.cF)};
        }
        const MeanPoint prev = state_;
        state_.equity = matrix_.a11 * prev.equity + matrix_.a12 * prev.mortgage + payment_;
        state_.mortgage = matrix_.a21 * prev.equity + matrix_.a22 * prev.mortgage - payment_;
        return state_;
    }

private:
    LoanParams loan_;
    MeanMatrix matrix_;
    double payment_;
    MeanPoint state_;
    std::optional<ClosedFormCoeffs> coeffs_;
};

void require_horizon(int horizon) {
    if (horizon < 1) {
        throw ValidationError("horizon must satisfy >= 1");
    }
}

void validate_all(const LoanParams& loan, const FiscalParams& fiscal, const MarketParams& market) {
    loan.validate();
    fiscal.validate();
    market.validate();
}

}  // namespace

void LoanParams::validate() const {
    require(finite(ell) && ell >= 0.0 && ell <= 1.0, "loan.ell", "0 <= ell <= 1");
    require(finite(mu) && mu >= 0.0 && mu <= 1.0, "loan.mu", "0 <= mu <= 1");
    require(finite(e0) && e0 > 0.0, "loan.e0", "e0 > 0");
    require(finite(m0) && m0 > 0.0, "loan.m0", "m0 > 0");
    require(finite(pi_star) && pi_star >= 0.0, "loan.pi_star", "pi_star >= 0");
    require(finite(q_skip) && q_skip >= 0.0 && q_skip < 1.0, "loan.q_skip", "0 <= q_skip < 1");
}

void FiscalParams::validate() const {
    require(finite(r_m) && r_m >= 0.0, "fiscal.r_m", "r_m >= 0");
    require(finite(r_b) && r_b >= 0.0, "fiscal.r_b", "r_b >= 0");
    require(finite(tau_m) && tau_m >= 0.0 && tau_m <= 1.0, "fiscal.tau_m", "0 <= tau_m <= 1");
    require(finite(tau_b) && tau_b >= 0.0 && tau_b <= 1.0, "fiscal.tau_b", "0 <= tau_b <= 1");
}

void MarketParams::validate() const {
    require(finite(p) && p >= 0.0 && p <= 1.0, "market.p", "0 <= p <= 1");
    require(finite(s), "market.s", "finite value");
    require(finite(phi) && phi >= 0.0, "market.phi", "phi >= 0");
}

std::string_view outcome_name(OutcomeClass cls) noexcept {
    switch (cls) {
    case OutcomeClass::StrongSuccess:
        return "strong_success";
    case OutcomeClass::WeakSuccess:
        return "weak_success";
    case OutcomeClass::Default:
        return "default";
    case OutcomeClass::PermanentRemortgage:
        break;
    }
    return "remortgage";
}

OutcomeClass parse_outcome(std::string_view name) {
    for (auto cls : {OutcomeClass::StrongSuccess, OutcomeClass::WeakSuccess,
                     OutcomeClass::Default, OutcomeClass::PermanentRemortgage}) {
        if (outcome_name(cls) == name) {
            return cls;
        }
    }
    throw ValidationError("unknown outcome '" + std::string(name) + "'");
}

double annual_to_quarterly(double r_annual) {
    if (!(r_annual > -1.0) || !finite(r_annual)) {
        throw ValidationError("annual rate must satisfy r > -1");
    }
    // expm1/log1p keep full relative precision for small rates.
    return std::expm1(0.25 * std::log1p(r_annual));
}

MeanMatrix mean_matrix(const LoanParams& loan, const FiscalParams& fiscal,
                       const MarketParams& market) {
    const double leverage = loan.ell * loan.mu * (2.0 * market.p - 1.0);
    MeanMatrix m;
    m.a11 = 1.0 + market.s + leverage - loan.ell * (1.0 - fiscal.tau_b) * fiscal.r_b;
    m.a12 = market.s + fiscal.tau_m * fiscal.r_m;
    m.a21 = -leverage;
    m.a22 = 1.0 + fiscal.r_m;
    return m;
}

EigenSystem eigensystem(const MeanMatrix& m) {
    EigenSystem eig;
    eig.trace = m.trace();
    eig.det = m.det();
    // Same value as tr^2 - 4 det, without the cancellation between two
    // numbers close to 4.
    const double diff = m.a11 - m.a22;
    eig.discriminant = diff * diff + 4.0 * m.a12 * m.a21;

    if (eig.discriminant >= 0.0) {
        const double root = std::sqrt(eig.discriminant);
        // Evaluate the larger-magnitude root directly and recover the other
        // from the product; the trace of a mean matrix is never near zero in
        // practice but handle the sign anyway.
        const double big = 0.5 * (eig.trace + std::copysign(root, eig.trace));
        const double small = big != 0.0 ? eig.det / big : 0.0;
        const double lo = std::min(big, small);
        const double hi = std::max(big, small);
        eig.lambda1 = lo;
        eig.lambda2 = hi;
        eig.complex_pair = false;
    } else {
        const double re = 0.5 * eig.trace;
        const double im = 0.5 * std::sqrt(-eig.discriminant);
        eig.lambda1 = {re, -im};
        eig.lambda2 = {re, im};
        eig.complex_pair = true;
    }
    return eig;
}

ClosedFormCoeffs closed_form_coeffs(const MeanMatrix& m, const EigenSystem& eig,
                                    const LoanParams& loan) {
    if (eig.complex_pair) {
        throw NearSingularError("complex eigenvalue pair");
    }
    const double l1 = eig.lambda1.real();
    const double l2 = eig.lambda2.real();
    if (std::abs(l1 - 1.0) < kSingularityTolerance || std::abs(l2 - 1.0) < kSingularityTolerance) {
        throw NearSingularError("eigenvalue within tolerance of 1");
    }
    if (std::abs(l1 - l2) < kSingularityTolerance) {
        throw NearSingularError("eigenvalues within tolerance of each other");
    }

    ClosedFormCoeffs c;
    c.lambda1 = l1;
    c.lambda2 = l2;
    const double payment = loan.mean_payment();
    c.c1 = loan.m0 / loan.e0;
    c.c2 = payment / loan.e0;
    c.c3 = 1.0 / c.c1;
    c.c4 = payment / loan.m0;

    // Work in units of E0: initial state (1, c1), forcing (c2, -c2).
    // Fixed point x* solves (I - A) x* = b.
    const double det_ia = (1.0 - m.a11) * (1.0 - m.a22) - m.a12 * m.a21;
    const double eq_star = ((1.0 - m.a22) * c.c2 - m.a12 * c.c2) / det_ia;
    const double mo_star = (m.a21 * c.c2 - (1.0 - m.a11) * c.c2) / det_ia;

    const double de = 1.0 - eq_star;
    const double dm = c.c1 - mo_star;

    // Spectral projectors P1 = (A - l2 I)/(l1 - l2), P2 = (A - l1 I)/(l2 - l1)
    // applied to the deviation from the fixed point.
    const double gap = l1 - l2;
    const double p1e = ((m.a11 - l2) * de + m.a12 * dm) / gap;
    const double p1m = (m.a21 * de + (m.a22 - l2) * dm) / gap;
    const double p2e = -((m.a11 - l1) * de + m.a12 * dm) / gap;
    const double p2m = -(m.a21 * de + (m.a22 - l1) * dm) / gap;

    c.cA = p1e;
    c.cB = p2e;
    c.cC = eq_star;
    // Mortgage coefficients are normalised by M0, i.e. divided by c1.
    c.cD = p1m * c.c3;
    c.cE = p2m * c.c3;
    c.cF = mo_star * c.c3;
    return c;
}

MeanPath mean_trajectory(const LoanParams& loan, const FiscalParams& fiscal,
                         const MarketParams& market, int horizon) {
    validate_all(loan, fiscal, market);
    require_horizon(horizon);
    MeanPath path;
    path.reserve(static_cast<std::size_t>(horizon) + 1);
    path.push_back({loan.e0, loan.m0});
    MeanEvaluator eval(loan, fiscal, market);
    for (int t = 1; t <= horizon; ++t) {
        path.push_back(eval.next(t));
    }
    return path;
}

MeanPath iterate_mean(const LoanParams& loan, const FiscalParams& fiscal,
                      const MarketParams& market, int horizon) {
    validate_all(loan, fiscal, market);
    require_horizon(horizon);
    const MeanMatrix a = mean_matrix(loan, fiscal, market);
    const double payment = loan.mean_payment();
    MeanPath path;
    path.reserve(static_cast<std::size_t>(horizon) + 1);
    path.push_back({loan.e0, loan.m0});
    for (int t = 1; t <= horizon; ++t) {
        const MeanPoint& prev = path.back();
        path.push_back({a.a11 * prev.equity + a.a12 * prev.mortgage + payment,
                        a.a21 * prev.equity + a.a22 * prev.mortgage - payment});
    }
    return path;
}

Outcome classify_hit(bool equity_hit, bool mortgage_hit, int t, const LoanParams& loan) {
    if (equity_hit) {
        // Simultaneous crossings count as default.
        return {OutcomeClass::Default, t};
    }
    if (mortgage_hit) {
        const double benchmark = loan.m0 / loan.pi_star;
        const bool strong = static_cast<double>(t) < benchmark;
        return {strong ? OutcomeClass::StrongSuccess : OutcomeClass::WeakSuccess, t};
    }
    return {OutcomeClass::PermanentRemortgage, std::nullopt};
}

Outcome classify_path(const MeanPath& path, const LoanParams& loan) {
    for (std::size_t t = 1; t < path.size(); ++t) {
        const bool e_hit = path[t].equity <= 0.0;
        const bool m_hit = path[t].mortgage <= 0.0;
        if (e_hit || m_hit) {
            return classify_hit(e_hit, m_hit, static_cast<int>(t), loan);
        }
    }
    return {OutcomeClass::PermanentRemortgage, std::nullopt};
}

Outcome classify_mean(const LoanParams& loan, const FiscalParams& fiscal,
                      const MarketParams& market, int horizon) {
    validate_all(loan, fiscal, market);
    require_horizon(horizon);
    MeanEvaluator eval(loan, fiscal, market);
    for (int t = 1; t <= horizon; ++t) {
        const MeanPoint x = eval.next(t);
        const bool e_hit = x.equity <= 0.0;
        const bool m_hit = x.mortgage <= 0.0;
        if (e_hit || m_hit) {
            return classify_hit(e_hit, m_hit, t, loan);
        }
    }
    return {OutcomeClass::PermanentRemortgage, std::nullopt};
}

}  // namespace debtrec
