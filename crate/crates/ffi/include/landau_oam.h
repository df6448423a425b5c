#ifndef LANDAU_OAM_H
#define LANDAU_OAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define LANDAU_KIND_CANONICAL 0

#define LANDAU_KIND_MECHANICAL 1

#define LANDAU_KIND_PSEUDO 2

#define LANDAU_AXIS_ORIGIN 0

#define LANDAU_AXIS_GUIDING_CENTER 1

// Status codes returned by every exported function.
typedef enum LandauStatus {
  LANDAU_STATUS_OK = 0,
  LANDAU_STATUS_NULL_POINTER = 1,
  // A parameter is out of its domain (non-positive field, m > n, ...).
  LANDAU_STATUS_INVALID_ARGUMENT = 2,
  // The requested state is outside the interior block of the Fock basis.
  LANDAU_STATUS_OUTSIDE_INTERIOR = 3,
  // The request is not defined (canonical OAM of a classical orbit).
  LANDAU_STATUS_UNSUPPORTED = 4,
  // A Rust panic was caught at the boundary.
  LANDAU_STATUS_INTERNAL = 5,
} LandauStatus;

// Physical parameters (B, e, m_e). Opaque.
typedef struct LandauConfig LandauConfig;

// Truncated Fock-space operators plus their interior projector. Opaque.
typedef struct LandauFock LandauFock;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *landau_last_error(void);

// Create a configuration; free it with `landau_config_free`.
enum LandauStatus landau_config_new(double b, double e, double mass, struct LandauConfig **out);

void landau_config_free(struct LandauConfig *config);

// Cyclotron frequency eB/m_e.
enum LandauStatus landau_omega(const struct LandauConfig *config, double *out);

// Magnetic length 1/sqrt(eB).
enum LandauStatus landau_magnetic_length(const struct LandauConfig *config, double *out);

// Landau level energy ω(n + 1/2).
enum LandauStatus landau_energy(const struct LandauConfig *config, int64_t n, double *out);

// Wavefunction ψ_{n,m}(r, φ) as real and imaginary parts.
enum LandauStatus landau_psi(const struct LandauConfig *config,
                             int64_t n,
                             int64_t m,
                             double r,
                             double phi,
                             double *out_re,
                             double *out_im);

// Norm of ψ_{n,m} by Gauss–Laguerre quadrature (64 radial nodes).
enum LandauStatus landau_quadrature_norm(const struct LandauConfig *config,
                                         int64_t n,
                                         int64_t m,
                                         double *out);

// OAM expectation value in the state (n, m) by quadrature.
enum LandauStatus landau_quadrature_oam(const struct LandauConfig *config,
                                        int64_t n,
                                        int64_t m,
                                        uint32_t kind,
                                        uint32_t axis,
                                        double *out);

// Build the truncated Fock operators with per-mode `cutoff` and interior
// `margin`; free with `landau_fock_free`.
enum LandauStatus landau_fock_new(const struct LandauConfig *config,
                                  uintptr_t cutoff,
                                  uintptr_t margin,
                                  struct LandauFock **out);

void landau_fock_free(struct LandauFock *handle);

// Number of basis states in the interior block.
enum LandauStatus landau_fock_interior_rank(const struct LandauFock *handle, uintptr_t *out);

// OAM expectation value in the basis ket of (n, m). Fails with
// `LANDAU_STATUS_OUTSIDE_INTERIOR` for kets near the cutoff.
enum LandauStatus landau_fock_oam(const struct LandauFock *handle,
                                  int64_t n,
                                  int64_t m,
                                  uint32_t kind,
                                  uint32_t axis,
                                  double *out);

// Cyclotron radius squared and guiding-center distance squared in (n, m).
enum LandauStatus landau_fock_radii(const struct LandauFock *handle,
                                    int64_t n,
                                    int64_t m,
                                    double *out_rc2,
                                    double *out_gc2);

// Largest interior residual over the operator identities and the
// conservation laws; `out_pass` is 1 iff every residual is within
// `tolerance` (conservation residuals scale with ω).
enum LandauStatus landau_fock_check_identities(const struct LandauFock *handle,
                                               double tolerance,
                                               double *out_max_residual,
                                               int32_t *out_pass);

// Guiding center of the classical orbit through (x0, y0) with velocity
// (vx0, vy0).
enum LandauStatus landau_classical_guiding_center(const struct LandauConfig *config,
                                                  double x0,
                                                  double y0,
                                                  double vx0,
                                                  double vy0,
                                                  double *out_x,
                                                  double *out_y);

// Classical OAM at time `t` on the closed-form orbit. Only the mechanical
// and pseudo kinds are defined.
enum LandauStatus landau_classical_oam(const struct LandauConfig *config,
                                       double x0,
                                       double y0,
                                       double vx0,
                                       double vy0,
                                       double t,
                                       uint32_t kind,
                                       uint32_t axis,
                                       double *out);

// One-period time average of a classical OAM by Simpson's rule with
// `samples` intervals (at least 16).
enum LandauStatus landau_classical_time_average(const struct LandauConfig *config,
                                                double x0,
                                                double y0,
                                                double vx0,
                                                double vy0,
                                                uint32_t kind,
                                                uint32_t axis,
                                                uintptr_t samples,
                                                double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LANDAU_OAM_H */
