/* E3 (static counter sets) with the PAPI high-level API: properly nested regions around code blocks.
 * Counters come from PAPI_EVENTS=PAPI_TOT_CYC,PAPI_TOT_INS,PAPI_LD_INS,PAPI_SR_INS. */
#include <stdio.h>
#include <stdlib.h>
#include <papi.h>

#ifndef N
#define N 64
#endif

static double a[N][N], b[N][N], c[N][N], d[N][N];

static void finish_monitoring(void);

static void fill(void)
{
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            a[i][j] = (double)(i + j) / N;
            b[i][j] = (double)(i - j) / N;
            c[i][j] = 0.0;
            d[i][j] = 0.0;
        }
}

static void check(int ret)
{
    if (ret != PAPI_OK) {
        fprintf(stderr, "PAPI error: %s\n", PAPI_strerror(ret));
        exit(1);
    }
}

static void begin_monitoring(void)
{
}

static void first(void)
{
    check(PAPI_hl_region_begin("first-all"));
    check(PAPI_hl_region_begin("first-block1"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    check(PAPI_hl_region_end("first-block1"));
    check(PAPI_hl_region_begin("first-block2"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    check(PAPI_hl_region_end("first-block2"));
    check(PAPI_hl_region_begin("first-block3"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    check(PAPI_hl_region_end("first-block3"));
    check(PAPI_hl_region_begin("first-block4"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    check(PAPI_hl_region_end("first-block4"));
    check(PAPI_hl_region_end("first-all"));
}

static void second(void)
{
    check(PAPI_hl_region_begin("second-all"));
    check(PAPI_hl_region_begin("second-block1"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    check(PAPI_hl_region_end("second-block1"));
    check(PAPI_hl_region_begin("second-block2"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    check(PAPI_hl_region_end("second-block2"));
    check(PAPI_hl_region_begin("second-block3"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    check(PAPI_hl_region_end("second-block3"));
    check(PAPI_hl_region_begin("second-block4"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    check(PAPI_hl_region_end("second-block4"));
    check(PAPI_hl_region_end("second-all"));
}

static void third(void)
{
    check(PAPI_hl_region_begin("third-all"));
    check(PAPI_hl_region_begin("third-block1"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    check(PAPI_hl_region_end("third-block1"));
    check(PAPI_hl_region_begin("third-block2"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    check(PAPI_hl_region_end("third-block2"));
    check(PAPI_hl_region_begin("third-block3"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    check(PAPI_hl_region_end("third-block3"));
    check(PAPI_hl_region_begin("third-block4"));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    check(PAPI_hl_region_end("third-block4"));
    check(PAPI_hl_region_end("third-all"));
}

int main(void)
{
    begin_monitoring();
    fill();
    first();
    second();
    third();
    printf("%f %f\n", c[N / 2][N / 2], d[N / 2][N / 2]);
    finish_monitoring();
    return 0;
}

static void finish_monitoring(void)
{
    check(PAPI_hl_stop());
}
