/* E2 (dynamic counter sets) with the PAPI low-level API: regions around code blocks. */
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

static const int first_block1_idx[2] = {0, 1};
static long long first_block1_begin[NUM_EVENTS], first_block1_end[NUM_EVENTS];
static int first_block1_runs;
static const int first_block2_idx[2] = {2, 3};
static long long first_block2_begin[NUM_EVENTS], first_block2_end[NUM_EVENTS];
static int first_block2_runs;
static const int first_block3_idx[2] = {4, 5};
static long long first_block3_begin[NUM_EVENTS], first_block3_end[NUM_EVENTS];
static int first_block3_runs;
static const int first_block4_idx[2] = {6, 7};
static long long first_block4_begin[NUM_EVENTS], first_block4_end[NUM_EVENTS];
static int first_block4_runs;
static const int second_block1_idx[2] = {8, 9};
static long long second_block1_begin[NUM_EVENTS], second_block1_end[NUM_EVENTS];
static int second_block1_runs;
static const int second_block2_idx[2] = {0, 1};
static long long second_block2_begin[NUM_EVENTS], second_block2_end[NUM_EVENTS];
static int second_block2_runs;
static const int second_block3_idx[2] = {2, 3};
static long long second_block3_begin[NUM_EVENTS], second_block3_end[NUM_EVENTS];
static int second_block3_runs;
static const int second_block4_idx[2] = {4, 5};
static long long second_block4_begin[NUM_EVENTS], second_block4_end[NUM_EVENTS];
static int second_block4_runs;
static const int third_block1_idx[2] = {6, 7};
static long long third_block1_begin[NUM_EVENTS], third_block1_end[NUM_EVENTS];
static int third_block1_runs;
static const int third_block2_idx[2] = {8, 9};
static long long third_block2_begin[NUM_EVENTS], third_block2_end[NUM_EVENTS];
static int third_block2_runs;
static const int third_block3_idx[2] = {0, 1};
static long long third_block3_begin[NUM_EVENTS], third_block3_end[NUM_EVENTS];
static int third_block3_runs;
static const int third_block4_idx[2] = {2, 3};
static long long third_block4_begin[NUM_EVENTS], third_block4_end[NUM_EVENTS];
static int third_block4_runs;

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
    read_counters(first_block1_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    read_counters(first_block1_end);
    report("first-block1", &first_block1_runs, first_block1_idx, 2, first_block1_begin,
           first_block1_end);
    read_counters(first_block2_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    read_counters(first_block2_end);
    report("first-block2", &first_block2_runs, first_block2_idx, 2, first_block2_begin,
           first_block2_end);
    read_counters(first_block3_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    read_counters(first_block3_end);
    report("first-block3", &first_block3_runs, first_block3_idx, 2, first_block3_begin,
           first_block3_end);
    read_counters(first_block4_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    read_counters(first_block4_end);
    report("first-block4", &first_block4_runs, first_block4_idx, 2, first_block4_begin,
           first_block4_end);
}

static void second(void)
{
    read_counters(second_block1_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    read_counters(second_block1_end);
    report("second-block1", &second_block1_runs, second_block1_idx, 2, second_block1_begin,
           second_block1_end);
    read_counters(second_block2_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    read_counters(second_block2_end);
    report("second-block2", &second_block2_runs, second_block2_idx, 2, second_block2_begin,
           second_block2_end);
    read_counters(second_block3_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    read_counters(second_block3_end);
    report("second-block3", &second_block3_runs, second_block3_idx, 2, second_block3_begin,
           second_block3_end);
    read_counters(second_block4_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    read_counters(second_block4_end);
    report("second-block4", &second_block4_runs, second_block4_idx, 2, second_block4_begin,
           second_block4_end);
}

static void third(void)
{
    read_counters(third_block1_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += a[i][k] * b[k][j];
    read_counters(third_block1_end);
    report("third-block1", &third_block1_runs, third_block1_idx, 2, third_block1_begin,
           third_block1_end);
    read_counters(third_block2_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += b[i][k] * a[k][j];
    read_counters(third_block2_end);
    report("third-block2", &third_block2_runs, third_block2_idx, 2, third_block2_begin,
           third_block2_end);
    read_counters(third_block3_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                c[i][j] += d[i][k] * a[k][j];
    read_counters(third_block3_end);
    report("third-block3", &third_block3_runs, third_block3_idx, 2, third_block3_begin,
           third_block3_end);
    read_counters(third_block4_begin);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                d[i][j] += c[i][k] * b[k][j];
    read_counters(third_block4_end);
    report("third-block4", &third_block4_runs, third_block4_idx, 2, third_block4_begin,
           third_block4_end);
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
