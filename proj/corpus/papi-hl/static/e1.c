/* E1 (static counter sets) with the PAPI high-level API: regions around function calls.
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
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
}

static void second(void)
{
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
}

static void third(void)
{
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
}

int main(void)
{
    begin_monitoring();
    fill();
    check(PAPI_hl_region_begin("call-first"));
    first();
    check(PAPI_hl_region_end("call-first"));
    check(PAPI_hl_region_begin("call-second"));
    second();
    check(PAPI_hl_region_end("call-second"));
    check(PAPI_hl_region_begin("call-third"));
    third();
    check(PAPI_hl_region_end("call-third"));
    printf("%f %f\n", c[N / 2][N / 2], d[N / 2][N / 2]);
    finish_monitoring();
    return 0;
}

static void finish_monitoring(void)
{
    check(PAPI_hl_stop());
}
