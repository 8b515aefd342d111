#pragma once

#include "kpw/decomposition.hpp"
#include "kpw/kernels.hpp"
#include "kpw/norms.hpp"

#include <optional>
#include <string>

namespace kpw {

enum class TheoremId { Main1, MainComm1, MainComm2, Main2, Main3 };

std::string theorem_name(TheoremId id);

struct InequalityReport {
    TheoremId theorem_id = TheoremId::Main1;
    double family_param = 0.0;
    double lhs = 0.0;
    std::vector<double> rhs_terms;
    double rhs = 0.0;
    double ratio = 0.0;
    bool degenerate = false; // rhs = 0
    double s = 0.0;
    double s_ddot = 0.0; // biparameter only
    Grid grid;
};

enum class FamilyKind { Modulated, Dilated, PsiSquared };
enum class BaseProfile { PhiHat, PsiHat };

struct FamilySpec {
    FamilyKind kind = FamilyKind::Modulated;
    std::vector<double> params; // k values (integers) or delta values
    BaseProfile base_profile = BaseProfile::PhiHat;
};

// Modulated: (e^{i 2^k x.e1} Phi^, e^{-i 2^k x.e1} Phi^); their product is
// Phi^2 independent of k. Dilated / psi-squared: profile(x/delta) pairs built
// by symbol-space rescaling. Throws when a parameter would alias.
std::vector<std::pair<GridFunction, GridFunction>> family_generate(const FamilySpec& spec,
                                                                   const Grid& grid);

// One instance of |J^s(fg)| <= C (|J^s f||g| + |f||J^s g|) in weighted norms.
InequalityReport kp_ratio(const GridFunction& f, const GridFunction& g, double s,
                          const ExponentTuple& e,
                          WeightKind wkind = WeightKind::Polynomial, double wscale = 1.0);

// Commutator variants: order 1 subtracts f J^s g; order 2 additionally
// subtracts s grad f . grad J^{s-2} g. rhs = |J^s f||g| + |grad f||J^{s-1} g|.
InequalityReport commutator_ratio(const GridFunction& f, const GridFunction& g, double s,
                                  const ExponentTuple& e, int order,
                                  WeightKind wkind = WeightKind::Polynomial,
                                  double wscale = 1.0);

// Exponent block for one mixed-norm factor/target set (eq. of four relations).
struct MixedExponents {
    // target / factor1 / factor2 for the dot (inner) block
    double p_dot = 1, p1_dot = 2, p2_dot = 2, a_dot = 0, a1_dot = 0, a2_dot = 0;
    // same for the ddot (outer) block
    double p_ddot = 1, p1_ddot = 2, p2_ddot = 2, a_ddot = 0, a1_ddot = 0, a2_ddot = 0;
    int dot_dim = 1, ddot_dim = 1;

    void validate() const;
    MixedSpec target_spec() const;
    MixedSpec factor1_spec() const;
    MixedSpec factor2_spec() const;
};

// J^s acting on the full variable, mixed norms on both sides.
InequalityReport mixed_ratio(const GridFunction& f, const GridFunction& g, double s,
                             const MixedExponents& me);

// J^{s_dot} on the leading block and J^{s_ddot} on the trailing block; the
// four-term right-hand side.
InequalityReport biparameter_ratio(const GridFunction& f, const GridFunction& g, double s_dot,
                                   double s_ddot, const MixedExponents& me);

struct SweepResult {
    std::vector<InequalityReport> reports;
    DecayFit ratio_fit; // log ratio vs log family scale (2^k or delta)
    DecayFit lhs_fit;
    DecayFit rhs_fit;
    double rhs_max_over_min = 0.0;
    double lhs_max_over_min = 0.0;
    double max_ratio = 0.0;
};

// Runs a family through the requested inequality. Modulated families evaluate
// the inequality literally; dilated and psi-squared families evaluate the
// delta-rescaled equivalent form (operator J^s_delta, weights <delta x>^a),
// which is the same ratio by exact change of variables but keeps both sides
// at a fixed frequency scale. Fits exclude the two extreme family parameters.
SweepResult sweep(TheoremId id, const FamilySpec& family, const ExponentTuple& e, double s,
                  const Grid& grid, WeightKind wkind = WeightKind::Polynomial);

enum class SharpnessClass { BoundedExpected, DivergentExpected, EvenIntegerException };

SharpnessClass sharpness_classify(double s, double p, int n);

} // namespace kpw
