#include "matmul.edpm.h"
#line 1 "matmul.c"
/* Naive matrix multiplication with two named regions: the row loop and the
 * per-row multiply nested inside it. */
#include <stdio.h>

#ifndef N
#define N 64
#endif

/* Soft-backend builds define EDPM_TICK; everywhere else it compiles away. */
#ifndef EDPM_TICK
#define EDPM_TICK(counter, amount) ((void)0)
#endif

static double a[N][N], b[N][N], c[N][N];

static void multiply(int i)
{
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            c[i][j] += a[i][k] * b[k][j];
    EDPM_TICK("memory.loads", 2 * N * N);
    EDPM_TICK("branch.conditional", N * N);
}

int main(void)
{
if (PAPI_library_init(PAPI_VER_CURRENT) != PAPI_VER_CURRENT)
    __edpm_fail("PAPI_library_init", PAPI_EINVAL);
__edpm_check(PAPI_create_eventset(&__edpm_es_0), "PAPI_create_eventset");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_LD_INS"), "PAPI_add_named_event");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_BR_UCN"), "PAPI_add_named_event");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_BR_CN"), "PAPI_add_named_event");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_BR_TKN"), "PAPI_add_named_event");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_BR_NTK"), "PAPI_add_named_event");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_BR_MSP"), "PAPI_add_named_event");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_BR_PRC"), "PAPI_add_named_event");
__edpm_check(PAPI_add_named_event(__edpm_es_0, "PAPI_L2_STM"), "PAPI_add_named_event");
__edpm_open("edpm.json");
#line 28 "matmul.c"
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            a[i][j] = (double)(i + j) / N;
            b[i][j] = (double)(i - j) / N;
        }

memset(__edpm_bv_0, 0, sizeof __edpm_bv_0);
__edpm_check(PAPI_start(__edpm_es_0), "PAPI_start");
__edpm_rv_for_iterated[0] = __edpm_bv_0[1];
__edpm_rv_for_iterated[1] = __edpm_bv_0[2];
__edpm_rv_for_iterated[2] = __edpm_bv_0[3];
__edpm_rv_for_iterated[3] = __edpm_bv_0[4];
__edpm_rv_for_iterated[4] = __edpm_bv_0[5];
__edpm_rv_for_iterated[5] = __edpm_bv_0[6];
#line 35 "matmul.c"
    for (int i = 0; i < N; ++i) {
__edpm_check(PAPI_accum(__edpm_es_0, __edpm_bv_0), "PAPI_accum");
__edpm_check(PAPI_stop(__edpm_es_0, __edpm_sv_0), "PAPI_stop");
__edpm_rv_multiply_iterated[0] = __edpm_bv_0[0];
__edpm_rv_multiply_iterated[1] = __edpm_bv_0[7];
__edpm_check(PAPI_start(__edpm_es_0), "PAPI_start");
#line 37 "matmul.c"
        multiply(i);
__edpm_check(PAPI_accum(__edpm_es_0, __edpm_bv_0), "PAPI_accum");
__edpm_check(PAPI_stop(__edpm_es_0, __edpm_sv_0), "PAPI_stop");
__edpm_rv_multiply_iterated[0] = __edpm_bv_0[0] - __edpm_rv_multiply_iterated[0];
__edpm_rv_multiply_iterated[1] = __edpm_bv_0[7] - __edpm_rv_multiply_iterated[1];
__edpm_emit("multiply-iterated", __edpm_tid_multiply_iterated, __edpm_rn_multiply_iterated, __edpm_rv_multiply_iterated, 2, 0);
++__edpm_tid_multiply_iterated;
__edpm_check(PAPI_start(__edpm_es_0), "PAPI_start");
#line 39 "matmul.c"
    }
__edpm_check(PAPI_stop(__edpm_es_0, __edpm_sv_0), "PAPI_stop");
__edpm_bv_0[0] += __edpm_sv_0[0];
__edpm_bv_0[1] += __edpm_sv_0[1];
__edpm_bv_0[2] += __edpm_sv_0[2];
__edpm_bv_0[3] += __edpm_sv_0[3];
__edpm_bv_0[4] += __edpm_sv_0[4];
__edpm_bv_0[5] += __edpm_sv_0[5];
__edpm_bv_0[6] += __edpm_sv_0[6];
__edpm_bv_0[7] += __edpm_sv_0[7];
__edpm_rv_for_iterated[0] = __edpm_bv_0[1] - __edpm_rv_for_iterated[0];
__edpm_rv_for_iterated[1] = __edpm_bv_0[2] - __edpm_rv_for_iterated[1];
__edpm_rv_for_iterated[2] = __edpm_bv_0[3] - __edpm_rv_for_iterated[2];
__edpm_rv_for_iterated[3] = __edpm_bv_0[4] - __edpm_rv_for_iterated[3];
__edpm_rv_for_iterated[4] = __edpm_bv_0[5] - __edpm_rv_for_iterated[4];
__edpm_rv_for_iterated[5] = __edpm_bv_0[6] - __edpm_rv_for_iterated[5];
__edpm_emit("for-iterated", __edpm_tid_for_iterated, __edpm_rn_for_iterated, __edpm_rv_for_iterated, 6, 0);
++__edpm_tid_for_iterated;
#line 41 "matmul.c"

    printf("%f\n", c[N - 1][N - 1]);
__edpm_check(PAPI_cleanup_eventset(__edpm_es_0), "PAPI_cleanup_eventset");
__edpm_check(PAPI_destroy_eventset(&__edpm_es_0), "PAPI_destroy_eventset");
PAPI_shutdown();
__edpm_close();
#line 44 "matmul.c"
    return 0;
}
