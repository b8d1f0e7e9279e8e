#include <assert.h>
#include <math.h>
#include <stdio.h>
#include "caplaw.h"

int main(void) {
    double tilde = 0.0;
    assert(caplaw_tilde_c(0.5, &tilde) == CAPLAW_STATUS_OK);
    assert(fabs(tilde - (2.0 - sqrt(2.0))) < 1e-14);

    double w[4];
    assert(caplaw_caputo_weights(0.7, 4, w, 4) == CAPLAW_STATUS_OK);
    double sum = w[0] + w[1] + w[2] + w[3];
    assert(fabs(sum - 1.0) < 1e-12);

    CaplawSolver *solver = NULL;
    assert(caplaw_solver_from_preset("burgers-sine", &solver) == CAPLAW_STATUS_OK);
    size_t cells = caplaw_solver_cell_count(solver);
    assert(cells == 201);
    assert(caplaw_solver_advance(solver, 10) == CAPLAW_STATUS_OK);
    double tv = 0.0;
    assert(caplaw_solver_total_variation(solver, &tv) == CAPLAW_STATUS_OK);
    assert(tv <= 4.0 + 1e-9);
    caplaw_solver_free(solver);

    assert(caplaw_solver_from_preset("bogus", &solver) == CAPLAW_STATUS_INVALID_ARGUMENT);
    printf("c smoke ok: tilde=%.12f tv=%.12f err=%s\n", tilde, tv, caplaw_last_error_message());
    return 0;
}
