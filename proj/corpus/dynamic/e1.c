/* E1 (dynamic counter sets): regions around function calls. */
#include <stdio.h>

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

static void begin_monitoring(void)
{
#pragma edpm init
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
#pragma edpm start call-first cpu
    first();
#pragma edpm stop call-first
#pragma edpm start call-second memory(loads, stores)
    second();
#pragma edpm stop call-second
#pragma edpm start call-third cache(l1-data, l2-data)
    third();
#pragma edpm stop call-third
    printf("%f %f\n", c[N / 2][N / 2], d[N / 2][N / 2]);
    finish_monitoring();
    return 0;
}

static void finish_monitoring(void)
{
#pragma edpm deinit
}
