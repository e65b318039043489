/* E1 (dynamic counter sets) with the PAPI low-level API: regions around function calls. */
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

#define NUM_EVENTS 6

static int event_set = PAPI_NULL;
static const char *event_names[NUM_EVENTS] = {"cpu.cycles", "cpu.instructions", "memory.loads", "memory.stores", "cache.l1-data", "cache.l2-data"};
static FILE *out;
static int records;

static const int call_first_idx[2] = {0, 1};
static long long call_first_begin[NUM_EVENTS], call_first_end[NUM_EVENTS];
static int call_first_runs;
static const int call_second_idx[2] = {2, 3};
static long long call_second_begin[NUM_EVENTS], call_second_end[NUM_EVENTS];
static int call_second_runs;
static const int call_third_idx[2] = {4, 5};
static long long call_third_begin[NUM_EVENTS], call_third_end[NUM_EVENTS];
static int call_third_runs;

static void handle_error(int code)
{
    fprintf(stderr, "PAPI error: %s\n", PAPI_strerror(code));
    exit(1);
}

static void read_counters(long long *values)
{
    int ret = PAPI_read(event_set, values);
    if (ret != PAPI_OK)
        handle_error(ret);
}

static void report(const char *region, int *runs, const int *idx, int n,
                   const long long *begin, const long long *end)
{
    fprintf(out, "%s{\"name\":\"%s\",\"temporal-id\":%d,\"counters\":{",
            records++ ? ",\n" : "", region, (*runs)++);
    for (int i = 0; i < n; ++i)
        fprintf(out, "%s\"%s\":%lld", i ? "," : "", event_names[idx[i]],
                end[idx[i]] - begin[idx[i]]);
    fputs("}}", out);
}

static void begin_monitoring(void)
{
    int ret;
    if (PAPI_library_init(PAPI_VER_CURRENT) != PAPI_VER_CURRENT)
        handle_error(PAPI_EINVAL);
    if ((ret = PAPI_create_eventset(&event_set)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_TOT_CYC)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_TOT_INS)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_LD_INS)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_SR_INS)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_L1_DCM)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_L2_DCM)) != PAPI_OK)
        handle_error(ret);
    out = fopen("papi.json", "w");
    if (out == NULL)
        exit(1);
    fputs("[", out);
    if ((ret = PAPI_start(event_set)) != PAPI_OK)
        handle_error(ret);
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
    read_counters(call_first_begin);
    first();
    read_counters(call_first_end);
    report("call-first", &call_first_runs, call_first_idx, 2, call_first_begin,
           call_first_end);
    read_counters(call_second_begin);
    second();
    read_counters(call_second_end);
    report("call-second", &call_second_runs, call_second_idx, 2, call_second_begin,
           call_second_end);
    read_counters(call_third_begin);
    third();
    read_counters(call_third_end);
    report("call-third", &call_third_runs, call_third_idx, 2, call_third_begin,
           call_third_end);
    printf("%f %f\n", c[N / 2][N / 2], d[N / 2][N / 2]);
    finish_monitoring();
    return 0;
}

static void finish_monitoring(void)
{
    long long values[NUM_EVENTS];
    int ret;
    if ((ret = PAPI_stop(event_set, values)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_cleanup_eventset(event_set)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_destroy_eventset(&event_set)) != PAPI_OK)
        handle_error(ret);
    PAPI_shutdown();
    fputs("]\n", out);
    fclose(out);
}
