/* E4 (dynamic counter sets) with the PAPI low-level API: alternating overlapping regions around code blocks. */
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

#define NUM_EVENTS 10

static int event_set = PAPI_NULL;
static const char *event_names[NUM_EVENTS] = {"cpu.cycles", "cpu.instructions", "memory.loads", "memory.stores", "cache.l1-data", "cache.l2-data", "branch.taken", "branch.mispredicted", "floating-point.multiply", "floating-point.add"};
static FILE *out;
static int records;

static const int first_blocks12_idx[2] = {0, 1};
static long long first_blocks12_begin[NUM_EVENTS], first_blocks12_end[NUM_EVENTS];
static int first_blocks12_runs;
static const int first_blocks23_idx[2] = {2, 3};
static long long first_blocks23_begin[NUM_EVENTS], first_blocks23_end[NUM_EVENTS];
static int first_blocks23_runs;
static const int first_blocks34_idx[2] = {4, 5};
static long long first_blocks34_begin[NUM_EVENTS], first_blocks34_end[NUM_EVENTS];
static int first_blocks34_runs;
static const int second_blocks12_idx[2] = {6, 7};
static long long second_blocks12_begin[NUM_EVENTS], second_blocks12_end[NUM_EVENTS];
static int second_blocks12_runs;
static const int second_blocks23_idx[2] = {8, 9};
static long long second_blocks23_begin[NUM_EVENTS], second_blocks23_end[NUM_EVENTS];
static int second_blocks23_runs;
static const int second_blocks34_idx[2] = {0, 1};
static long long second_blocks34_begin[NUM_EVENTS], second_blocks34_end[NUM_EVENTS];
static int second_blocks34_runs;
static const int third_blocks12_idx[2] = {2, 3};
static long long third_blocks12_begin[NUM_EVENTS], third_blocks12_end[NUM_EVENTS];
static int third_blocks12_runs;
static const int third_blocks23_idx[2] = {4, 5};
static long long third_blocks23_begin[NUM_EVENTS], third_blocks23_end[NUM_EVENTS];
static int third_blocks23_runs;
static const int third_blocks34_idx[2] = {6, 7};
static long long third_blocks34_begin[NUM_EVENTS], third_blocks34_end[NUM_EVENTS];
static int third_blocks34_runs;

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
    if ((ret = PAPI_add_event(event_set, PAPI_BR_TKN)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_BR_MSP)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_FML_INS)) != PAPI_OK)
        handle_error(ret);
    if ((ret = PAPI_add_event(event_set, PAPI_FAD_INS)) != PAPI_OK)
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
    read_counters(first_blocks12_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    read_counters(first_blocks23_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    read_counters(first_blocks12_end);
    report("first-blocks12", &first_blocks12_runs, first_blocks12_idx, 2, first_blocks12_begin,
           first_blocks12_end);
    read_counters(first_blocks34_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    read_counters(first_blocks23_end);
    report("first-blocks23", &first_blocks23_runs, first_blocks23_idx, 2, first_blocks23_begin,
           first_blocks23_end);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    read_counters(first_blocks34_end);
    report("first-blocks34", &first_blocks34_runs, first_blocks34_idx, 2, first_blocks34_begin,
           first_blocks34_end);
}

static void second(void)
{
    read_counters(second_blocks12_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    read_counters(second_blocks23_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    read_counters(second_blocks12_end);
    report("second-blocks12", &second_blocks12_runs, second_blocks12_idx, 2, second_blocks12_begin,
           second_blocks12_end);
    read_counters(second_blocks34_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    read_counters(second_blocks23_end);
    report("second-blocks23", &second_blocks23_runs, second_blocks23_idx, 2, second_blocks23_begin,
           second_blocks23_end);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    read_counters(second_blocks34_end);
    report("second-blocks34", &second_blocks34_runs, second_blocks34_idx, 2, second_blocks34_begin,
           second_blocks34_end);
}

static void third(void)
{
    read_counters(third_blocks12_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    read_counters(third_blocks23_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    read_counters(third_blocks12_end);
    report("third-blocks12", &third_blocks12_runs, third_blocks12_idx, 2, third_blocks12_begin,
           third_blocks12_end);
    read_counters(third_blocks34_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    read_counters(third_blocks23_end);
    report("third-blocks23", &third_blocks23_runs, third_blocks23_idx, 2, third_blocks23_begin,
           third_blocks23_end);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    read_counters(third_blocks34_end);
    report("third-blocks34", &third_blocks34_runs, third_blocks34_idx, 2, third_blocks34_begin,
           third_blocks34_end);
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
