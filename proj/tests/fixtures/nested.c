/* Properly nested regions with scripted ticks.
 *
 *   inner: 3 records, memory.loads = 2 each
 *   outer: memory.loads = 5 + 3 * 2 + 4 = 15
 *          branch.taken = 1 + 3 * 7 = 22
 */
#ifndef EDPM_TICK
#define EDPM_TICK(counter, amount) ((void)0)
#endif

int main(void)
{
#pragma edpm init
#pragma edpm start outer memory(loads), branch(taken)
    EDPM_TICK("memory.loads", 5);
    EDPM_TICK("branch.taken", 1);
    for (int i = 0; i < 3; ++i) {
        #pragma edpm start inner memory(loads)
        EDPM_TICK("memory.loads", 2);
        EDPM_TICK("branch.taken", 7);
        #pragma edpm stop inner
    }
    EDPM_TICK("memory.loads", 4);
    EDPM_TICK("cpu.cycles", 1000);
#pragma edpm stop outer
    EDPM_TICK("memory.loads", 99);
#pragma edpm deinit
    return 0;
}
