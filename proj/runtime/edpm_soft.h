/*
 * Soft-backend runtime ABI.
 *
 * Programs precompiled with `--backend soft` call these functions. The
 * generated header repeats the prototypes, so a runtime implementation only
 * has to match them; it is linked by `edpm build --shim <file>`.
 *
 * Contract relied on by the generated code:
 *   - edpm_soft_init opens the record file (EDPM_OUTPUT overrides `path`) and
 *     writes "[". A second call is ignored.
 *   - edpm_soft_create_eventset returns a handle for the given dotted counter
 *     names; edpm_soft_read copies the handle's tallies into `values` in the
 *     same order.
 *   - edpm_soft_start zeroes the tallies and makes the handle active;
 *     edpm_soft_stop deactivates it. Between pause and resume, ticks are
 *     discarded.
 *   - edpm_soft_tick adds `amount` to `counter` only if the active handle
 *     tracks that counter.
 *   - edpm_soft_emit appends one record
 *       {"name":"<region>","temporal-id":<n>,"counters":{"<type>.<counter>":<v>,...}}
 *     separating records with ",\n"; edpm_soft_finalize writes "]\n" and
 *     closes the file. A second finalize is a no-op.
 *
 * Single-threaded only.
 */
#ifndef EDPM_SOFT_H
#define EDPM_SOFT_H

#ifdef __cplusplus
extern "C" {
#endif

void edpm_soft_init(const char *path, int buffered);
void edpm_soft_finalize(void);
int edpm_soft_create_eventset(const char *const *events, int count);
void edpm_soft_destroy_eventset(int eventset);
void edpm_soft_start(int eventset);
void edpm_soft_stop(int eventset);
void edpm_soft_pause(int eventset);
void edpm_soft_resume(int eventset);
void edpm_soft_read(int eventset, long long *values);
void edpm_soft_tick(const char *counter, long long amount);
void edpm_soft_emit(const char *region, long long temporal_id,
                    const char *const *counters, const long long *values, int count);

#ifdef __cplusplus
}
#endif

#endif /* EDPM_SOFT_H */
