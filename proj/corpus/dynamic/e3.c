/* E3 (dynamic counter sets): properly nested regions around code blocks. */
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
#pragma edpm start first-all cpu
#pragma edpm start first-block1 memory(loads, stores)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
#pragma edpm stop first-block1
#pragma edpm start first-block2 cache(l1-data, l2-data)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
#pragma edpm stop first-block2
#pragma edpm start first-block3 branch(taken, mispredicted)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
#pragma edpm stop first-block3
#pragma edpm start first-block4 floating-point(multiply, add)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
#pragma edpm stop first-block4
#pragma edpm stop first-all
}

static void second(void)
{
#pragma edpm start second-all cpu
#pragma edpm start second-block1 memory(loads, stores)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
#pragma edpm stop second-block1
#pragma edpm start second-block2 cache(l1-data, l2-data)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
#pragma edpm stop second-block2
#pragma edpm start second-block3 branch(taken, mispredicted)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
#pragma edpm stop second-block3
#pragma edpm start second-block4 floating-point(multiply, add)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
#pragma edpm stop second-block4
#pragma edpm stop second-all
}

static void third(void)
{
#pragma edpm start third-all cpu
#pragma edpm start third-block1 memory(loads, stores)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
#pragma edpm stop third-block1
#pragma edpm start third-block2 cache(l1-data, l2-data)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
#pragma edpm stop third-block2
#pragma edpm start third-block3 branch(taken, mispredicted)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
#pragma edpm stop third-block3
#pragma edpm start third-block4 floating-point(multiply, add)
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
#pragma edpm stop third-block4
#pragma edpm stop third-all
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
