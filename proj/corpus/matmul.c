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
#pragma edpm init
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            a[i][j] = (double)(i + j) / N;
            b[i][j] = (double)(i - j) / N;
        }

#pragma edpm start for-iterated branch
    for (int i = 0; i < N; ++i) {
#pragma edpm start multiply-iterated memory(loads), cache(l2-stores)
        multiply(i);
#pragma edpm stop multiply-iterated
    }
#pragma edpm stop for-iterated

    printf("%f\n", c[N - 1][N - 1]);
#pragma edpm deinit
    return 0;
}
