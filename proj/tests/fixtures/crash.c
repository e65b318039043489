/* Leaves the record file unterminated: finalize never runs. */
#include <unistd.h>

int main(void)
{
#pragma edpm init
#pragma edpm start r cpu
#pragma edpm stop r
    _exit(0);
#pragma edpm deinit
}
