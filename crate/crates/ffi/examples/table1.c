/* Build: cargo build -p landau-oam-ffi
 *        cc crates/ffi/examples/table1.c -Icrates/ffi/include \
 *           target/debug/liblandau_oam_ffi.a -lpthread -ldl -lm -o table1 */
#include <stdio.h>
#include "landau_oam.h"

int main(void) {
    LandauConfig *cfg = NULL;
    LandauFock *fock = NULL;
    if (landau_config_new(1.0, 1.0, 1.0, &cfg) != LANDAU_STATUS_OK ||
        landau_fock_new(cfg, 20, 4, &fock) != LANDAU_STATUS_OK) {
        fprintf(stderr, "setup failed: %s\n", landau_last_error());
        return 2;
    }
    const char *kinds[] = {"can", "mech", "ps"};
    printf("n m");
    for (unsigned axis = 0; axis < 2; axis++)
        for (unsigned k = 0; k < 3; k++)
            printf(" L_%s_%s", kinds[k], axis ? "gc" : "origin");
    printf("\n");
    for (long n = 0; n <= 2; n++) {
        for (long m = -2; m <= n; m++) {
            printf("%ld %ld", n, m);
            for (unsigned axis = 0; axis < 2; axis++) {
                for (unsigned k = 0; k < 3; k++) {
                    double quad, op;
                    landau_quadrature_oam(cfg, n, m, k, axis, &quad);
                    landau_fock_oam(fock, n, m, k, axis, &op);
                    printf(" %.10f", quad);
                    if (quad - op > 1e-8 || op - quad > 1e-8) printf("(!)");
                }
            }
            printf("\n");
        }
    }
    double x;
    LandauStatus s = landau_fock_oam(fock, 19, 0, LANDAU_KIND_CANONICAL, LANDAU_AXIS_ORIGIN, &x);
    printf("n=19 m=0 -> status %d: %s\n", (int)s, landau_last_error());
    landau_fock_free(fock);
    landau_config_free(cfg);
    return 0;
}
