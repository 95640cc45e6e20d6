/* Minimal C consumer of the relloc library.
 *
 * Build (from the workspace root, after `cargo build -p relloc-capi`):
 *
 *   cc crates/relloc-capi/examples/demo.c \
 *      -Icrates/relloc-capi/include \
 *      -Ltarget/debug -lrelloc_capi -lm \
 *      -Wl,-rpath,"$PWD/target/debug" -o demo
 */
#include <stdio.h>
#include <relloc.h>

static const char *STATE =
    "{\"m\": 2.0, \"S\": 1.0, \"c\": 1.0,"
    " \"x\": [0.5, 0, 0], \"p\": [0, 1.5, 0], \"s_hat\": [0, 0, 1]}";

int main(void) {
    RellocState *state = NULL;
    if (relloc_state_from_json(STATE, &state) != RELLOC_STATUS_OK) {
        fprintf(stderr, "state: %s\n", relloc_last_error());
        return 1;
    }

    double energy, bracket, radius;
    double position[3];
    relloc_eval(state, "P0", &energy);
    relloc_bracket(state, "J12", "P1", &bracket);
    relloc_nw_position(state, position);
    relloc_moller_disc(state, &radius, NULL, NULL);

    printf("relloc %s\n", relloc_version());
    printf("P0        = %g\n", energy);
    printf("{J12, P1} = %g\n", bracket);
    printf("X         = (%g, %g, %g)\n", position[0], position[1], position[2]);
    printf("radius    = %g\n", radius);

    bool passed = false;
    relloc_verify("hodge", 42, 25, &passed);
    printf("hodge checks %s\n", passed ? "pass" : "FAIL");

    relloc_state_free(state);
    return 0;
}
