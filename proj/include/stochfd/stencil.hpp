#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Stencil sets and coefficient fields defining the spatial operator
//
//   L^h u = sum_{lambda in Lambda0} d_{-h,lambda}( a^lambda d_{h,lambda} u )
//         + sum_{gamma  in Lambda1} p^gamma d_{h,gamma} u
//         + sum_{gamma  in Lambda1} c^gamma T_{h,gamma} u
//
// together with the two constructors (diagonal and diagonally-dominant
// decompositions) and the consistency checks tying the h=0 coefficients
// back to the continuum operator.

namespace stochfd {

// Lattice offset (integer coordinates). Integer coords make the rational
// linear-dependence requirement on the offset set automatic and keep the
// refined grids nested.
struct StencilVector {
    std::vector<int> coords;

    StencilVector() = default;
    explicit StencilVector(std::vector<int> c) : coords(std::move(c)) {}

    int dim() const { return static_cast<int>(coords.size()); }
    bool is_zero() const;
    StencilVector negated() const;
    double norm2_sq() const; // sum of squares
    int max_abs_coord() const;

    bool operator==(const StencilVector& o) const { return coords == o.coords; }
    bool operator<(const StencilVector& o) const { return coords < o.coords; }
};

std::string to_string(const StencilVector& v);

// Scalar coefficient of one stencil term, evaluated at (t, x, h).
// time_independent/constant_value let the operator cache evaluated fields.
struct Coeff {
    std::function<double(double t, std::span<const double> x, double h)> fn;
    bool time_independent = false;
    std::optional<double> constant_value;

    double operator()(double t, std::span<const double> x, double h) const {
        return constant_value ? *constant_value : fn(t, x, h);
    }

    static Coeff constant(double v);
    static Coeff zero() { return constant(0.0); }
};

using CoeffMap = std::map<StencilVector, Coeff>;

// Multiplicative noise coefficients nu^r(t, x), r = 0..R-1.
using NuField = std::function<double(double t, std::span<const double> x, int r)>;

struct StencilSpec {
    int dim = 0;
    std::vector<StencilVector> lambda0; // second-order offsets
    std::vector<StencilVector> lambda1; // first/zero-order offsets
    CoeffMap a;                         // per lambda in lambda0
    CoeffMap p;                         // per gamma in lambda1
    CoeffMap c;                         // per gamma in lambda1
    NuField nu;                         // may be empty when R = 0
    int num_noise = 0;                  // R

    double a_coeff(double t, std::span<const double> x, double h, const StencilVector& lam) const;
    double p_coeff(double t, std::span<const double> x, double h, const StencilVector& gam) const;
    double c_coeff(double t, std::span<const double> x, double h, const StencilVector& gam) const;
    double nu_coeff(double t, std::span<const double> x, int r) const;

    // Lambda = Lambda0 union -Lambda0 union Lambda1, deduplicated, sorted.
    std::vector<StencilVector> full_set() const;
    int max_abs_offset() const; // largest |coordinate| over the full set
};

// Continuum problem data (a, b, c, f, g, nu, psi).
struct PdeCoefficients {
    int dim = 0;
    std::function<double(double t, std::span<const double> x, int i, int j)> a;
    std::function<double(double t, std::span<const double> x, int i)> b;
    std::function<double(double t, std::span<const double> x)> c;
    std::function<double(double t, std::span<const double> x)> f;
    std::function<double(double t, std::span<const double> x, int r)> g;
    NuField nu;
    std::function<double(std::span<const double> x)> psi;
    int num_noise = 0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty(); }
};

// Sample cloud used by the pointwise coefficient checks.
struct CoeffSamples {
    std::vector<double> times;
    std::vector<std::vector<double>> points;
    std::vector<double> meshes; // h values, may include 0
};

// Uniform sample cloud in [0, extent)^d, times in [0, t_max], meshes
// {0, h_max, h_max/2, h_max/4}.
CoeffSamples default_samples(int dim, double extent, double t_max, double h_max,
                             int points_per_axis = 5);

// Structural checks: symmetry of Lambda1, membership of 0, p^0 = 0 at the
// given samples. Records the rational-dependence requirement as satisfied
// by construction (integer offsets).
ValidationReport validate_stencil(const StencilSpec& spec,
                                  const CoeffSamples& samples = {});

// Nonnegativity of a^lambda and p^gamma over the sample cloud.
ValidationReport check_nonnegativity(const StencilSpec& spec, const CoeffSamples& samples);

struct ReconstructedPde {
    std::vector<std::vector<double>> a; // d x d
    std::vector<double> b;              // d
    double c = 0.0;
};

// Continuum coefficients induced by the h=0 stencil coefficients:
//   a^{ij} = sum_lambda a_0^lambda lambda^i lambda^j,
//   b^i    = sum_gamma  p_0^gamma gamma^i,
//   c      = sum_gamma  c_0^gamma.
ReconstructedPde reconstruct_pde(const StencilSpec& spec, double t,
                                 std::span<const double> x);

using ScalarField = std::function<double(double t, std::span<const double> x)>;
using VectorField = std::function<double(double t, std::span<const double> x, int i)>;
using MatrixField = std::function<double(double t, std::span<const double> x, int i, int j)>;

// Upwind decomposition for diagonal (a^{ij}): Lambda0 = {e_i},
// Lambda1 = {0, +-e_i}; a^{e_i} = a^{ii}, p^{e_i} = b^i + theta^i,
// p^{-e_i} = theta^i, c^0 = c. Requires theta^i >= max(0, -b^i) at every
// sample point.
StencilSpec build_diagonal_stencil(int dim, const VectorField& a_diag,
                                   const VectorField& b, const ScalarField& c,
                                   std::span<const double> theta,
                                   const CoeffSamples& samples = {});

// Decomposition for diagonally dominant symmetric nonnegative-definite
// (a^{ij}) (2 a^{ii} >= sum_j |a^{ij}|):
//   a^{e_i}       = a^{ii} - sum_{j != i} |a^{ij}|
//   a^{e_i + e_j} = (a^{ij})^+                       (i < j)
//   a^{e_i - e_j} = a^{e_j - e_i} = (a^{ij})^- / 2   (i < j)
// which satisfies sum_lambda a^lambda lambda lambda^T = a exactly; first
// and zero order terms carry constant shifts theta^i >= kappa - |b^i|/2
// and theta^{ij} >= kappa.
StencilSpec build_diagdom_stencil(int dim, const MatrixField& a, const VectorField& b,
                                  const ScalarField& c, double kappa,
                                  const CoeffSamples& samples = {},
                                  std::span<const double> theta_i = {},
                                  double theta_cross = -1.0);

// True iff p^gamma >= kappa for all gamma in Lambda1 \ {0} over the samples.
bool check_lower_bound_p(const StencilSpec& spec, double kappa, const CoeffSamples& samples);

} // namespace stochfd
