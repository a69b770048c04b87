#pragma once

// Mean-process machinery for the equity/mortgage recursion with interest
// costs and tax shields.
//
// The mean state x_t = (<E_t>, <M_t>) follows the affine map
//
//     x_t = A x_{t-1} + (<pi>, -<pi>),
//
//     A = | 1 + s + l mu (2p-1) - l (1-tau_b) r_b    s + tau_m r_m |
//         | -l mu (2p-1)                             1 + r_m       |
//
// with <pi> = (1 - q) pi*. With all rates and taxes at zero this is the
// original costless model whose eigenvalues are 1 + s and 1 + l mu (2p-1).

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace debtrec {

inline constexpr int kDefaultHorizon = 400;

/// Guard on |lambda - 1| and |lambda1 - lambda2| below which the closed form
/// is abandoned in favour of direct iteration.
inline constexpr double kSingularityTolerance = 1e-9;

struct LoanParams {
    double ell = 0.5;        // loan-to-value ratio
    double mu = 0.5;         // fraction of usable equity put at risk
    double e0 = 30000.0;     // initial equity
    double m0 = 300000.0;    // initial mortgage
    double pi_star = 3000.0; // scheduled quarterly payment
    double q_skip = 0.01;    // probability a payment is skipped

    double mean_payment() const noexcept { return (1.0 - q_skip) * pi_star; }

    /// Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(const LoanParams&) const = default;
};

/// Quarterly rates and marginal tax rates.
struct FiscalParams {
    double r_m = 0.0;
    double r_b = 0.0;
    double tau_m = 0.0;
    double tau_b = 0.0;

    void validate() const;

    bool operator==(const FiscalParams&) const = default;
};

struct MarketParams {
    double p = 0.5;     // per-quarter investment success probability
    double s = 0.0;     // mean quarterly housing drift
    double phi = 0.01;  // housing-shock standard deviation

    void validate() const;

    bool operator==(const MarketParams&) const = default;
};

struct MeanMatrix {
    double a11 = 1.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 1.0;

    double trace() const noexcept { return a11 + a22; }
    double det() const noexcept { return a11 * a22 - a12 * a21; }
};

/// Eigenvalues of a MeanMatrix. lambda1 is the root (tr - sqrt(D)) / 2 and
/// lambda2 the root (tr + sqrt(D)) / 2, D = tr^2 - 4 det. When D < 0 the
/// pair is complex conjugate and `complex_pair` is set.
struct EigenSystem {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    double trace = 0.0;
    double det = 0.0;
    double discriminant = 0.0;
    bool complex_pair = false;
};

/// Coefficients of
///   <E_t>/E0 = cA l1^t + cB l2^t + cC,   <M_t>/M0 = cD l1^t + cE l2^t + cF
/// and the initial-condition ratios c1 = M0/E0, c2 = <pi>/E0, c3 = E0/M0,
/// c4 = <pi>/M0.
struct ClosedFormCoeffs {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double cA = 0.0, cB = 0.0, cC = 0.0;
    double cD = 0.0, cE = 0.0, cF = 0.0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
};

enum class OutcomeClass { StrongSuccess, WeakSuccess, Default, PermanentRemortgage };

inline constexpr std::size_t kOutcomeClassCount = 4;

/// Snake-case identifier used in every emitted file: strong_success,
/// weak_success, default, remortgage.
std::string_view outcome_name(OutcomeClass cls) noexcept;

/// Inverse of outcome_name. Throws ValidationError on an unknown name.
OutcomeClass parse_outcome(std::string_view name);

struct Outcome {
    OutcomeClass cls = OutcomeClass::PermanentRemortgage;
    std::optional<int> t_star;  // absent iff PermanentRemortgage

    bool is_success() const noexcept {
        return cls == OutcomeClass::StrongSuccess || cls == OutcomeClass::WeakSuccess;
    }

    bool operator==(const Outcome&) const = default;
};

struct MeanPoint {
    double equity = 0.0;
    double mortgage = 0.0;

    bool operator==(const MeanPoint&) const = default;
};

using MeanPath = std::vector<MeanPoint>;

/// (1 + r)^(1/4) - 1. Throws ValidationError for r <= -1.
double annual_to_quarterly(double r_annual);

MeanMatrix mean_matrix(const LoanParams& loan, const FiscalParams& fiscal,
                       const MarketParams& market);

EigenSystem eigensystem(const MeanMatrix& m);

/// Throws NearSingularError when the eigenvalues are complex, when either
/// eigenvalue is within kSingularityTolerance of 1, or when they are within
/// kSingularityTolerance of each other.
ClosedFormCoeffs closed_form_coeffs(const MeanMatrix& m, const EigenSystem& eig,
                                    const LoanParams& loan);

/// Closed-form mean path of length horizon + 1. Falls back to iterate_mean
/// whenever closed_form_coeffs refuses the eigensystem.
MeanPath mean_trajectory(const LoanParams& loan, const FiscalParams& fiscal,
                         const MarketParams& market, int horizon);

/// Direct iteration of the affine mean map, length horizon + 1.
MeanPath iterate_mean(const LoanParams& loan, const FiscalParams& fiscal,
                      const MarketParams& market, int horizon);

/// First-passage classification of a path starting at (E0, M0).
/// Entry 0 is the initial condition and is not tested for hitting.
Outcome classify_path(const MeanPath& path, const LoanParams& loan);

/// Classification of the threshold crossing at quarter t. Used by both the
/// mean-path and the Monte Carlo classifier so the two agree on ties and on
/// the strong/weak split.
Outcome classify_hit(bool equity_hit, bool mortgage_hit, int t, const LoanParams& loan);

Outcome classify_mean(const LoanParams& loan, const FiscalParams& fiscal,
                      const MarketParams& market, int horizon = kDefaultHorizon);

}  // namespace debtrec
