/* E4 (dynamic counter sets): alternating overlapping regions around code blocks. */
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
#pragma edpm start first-blocks12 cpu
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
#pragma edpm start first-blocks23 memory(loads, stores)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
#pragma edpm stop first-blocks12
#pragma edpm start first-blocks34 cache(l1-data, l2-data)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
#pragma edpm stop first-blocks23
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
#pragma edpm stop first-blocks34
}

static void second(void)
{
#pragma edpm start second-blocks12 branch(taken, mispredicted)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
#pragma edpm start second-blocks23 floating-point(multiply, add)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
#pragma edpm stop second-blocks12
#pragma edpm start second-blocks34 cpu
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
#pragma edpm stop second-blocks23
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
#pragma edpm stop second-blocks34
}

static void third(void)
{
#pragma edpm start third-blocks12 memory(loads, stores)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
#pragma edpm start third-blocks23 cache(l1-data, l2-data)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
#pragma edpm stop third-blocks12
#pragma edpm start third-blocks34 branch(taken, mispredicted)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
#pragma edpm stop third-blocks23
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
#pragma edpm stop third-blocks34
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
#pragma edpm deinit
}
