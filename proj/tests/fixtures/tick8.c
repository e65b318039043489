/* One tick per loop iteration inside a region opened in the loop body. */
#ifndef EDPM_TICK
#define EDPM_TICK(counter, amount) ((void)0)
#endif

int main(void)
{
#pragma edpm init
    for (int i = 0; i < 8; ++i) {
        #pragma edpm start body memory(loads)
        EDPM_TICK("memory.loads", 1);
        #pragma edpm stop body
    }
#pragma edpm deinit
    return 0;
}
