#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crooked/affine_schottky.hpp"
#include "crooked/zigzag.hpp"

namespace crooked {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;           // summary or minimal counterexample
    double max_residual = 0.0;
    /// A failing residual at roundoff scale is a tolerance artifact, not a
    /// mathematical violation.
    bool tolerance_limited = false;
};

struct PropertyBudget {
    int samples = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-9;
};

namespace props {

// lorentz-core
PropertyResult null_frame_invariants(int samples, std::uint64_t seed, double tol);
PropertyResult cross_product_identity(int samples, std::uint64_t seed, double tol);
PropertyResult interval_round_trip(int samples, std::uint64_t seed, double tol);
PropertyResult causal_trichotomy(int samples, std::uint64_t seed, double tol);

// isometry
PropertyResult isometry_group_invariants(int samples, std::uint64_t seed, double tol);
PropertyResult hyperbolic_eigen_residuals(int samples, std::uint64_t seed, double tol);
PropertyResult circle_action_is_action(int samples, std::uint64_t seed, double tol);
PropertyResult cartan_round_trip(int samples, std::uint64_t seed, double tol);
PropertyResult distortion_two_sided(int samples, std::uint64_t seed, double tol);
PropertyResult compression_containment(int isometries, int samples_per, std::uint64_t seed,
                                       double tol);

// hyperbolic-schottky
PropertyResult schottky_configuration(const AffineSchottkyConfig& cfg, double tol);
PropertyResult schottky_pingpong(const AffineSchottkyConfig& cfg, int max_len, int samples,
                                 std::uint64_t seed, double tol);
PropertyResult eps0_criterion(const AffineSchottkyConfig& cfg, int max_len, double tol);
PropertyResult conjugate_family_decay(const AffineSchottkyConfig& cfg, int max_n, double tol);
PropertyResult hyperbolic_completeness(const AffineSchottkyConfig& cfg, int samples,
                                       std::uint64_t seed, double tol);

// crooked
PropertyResult membership_trichotomy(int samples, std::uint64_t seed, double tol);
PropertyResult membership_model_grid(double tol);
PropertyResult wedge_decomposition(int samples, std::uint64_t seed, double tol);
PropertyResult transport_equivariance(int isometries, int samples_per, std::uint64_t seed,
                                      double tol);
PropertyResult separation_baselines(const AffineSchottkyConfig& cfg, double tol);

// affine-schottky
PropertyResult affine_pingpong(const AffineSchottkyConfig& cfg, int max_len, int samples,
                               std::uint64_t seed, double tol);
PropertyResult locate_round_trip(const AffineSchottkyConfig& cfg, int samples, int max_steps,
                                 double box, double roundtrip_tol, std::uint64_t seed, double tol);
PropertyResult delta0_ball_property(const AffineSchottkyConfig& cfg, double delta0, int samples,
                                    std::uint64_t seed, double tol);
PropertyResult audit_guarantees(const AffineSchottkyConfig& cfg, int max_len, double tol);

// zigzag
PropertyResult slice_membership_oracle(int samples, std::uint64_t seed, double tol);
PropertyResult zigzag_angle_identity(int samples, std::uint64_t seed, double tol);
PropertyResult slice_equivariance(int samples, std::uint64_t seed, double tol);
PropertyResult separation_chain(const AffineSchottkyConfig& cfg, double delta0, int sequences,
                                int terms, std::uint64_t seed, double tol,
                                std::vector<SeparationRow>* rows_out = nullptr);

}  // namespace props

/// The full suite at a given budget (used by the verify command).  The
/// configuration must already be validated.
std::vector<PropertyResult> run_property_suite(AffineSchottkyConfig& cfg,
                                               const PropertyBudget& budget,
                                               std::vector<SeparationRow>* rows_out = nullptr);

}  // namespace crooked
