int main(void)
{
#pragma edpm init
#pragma edpm init
#pragma edpm deinit
    return 0;
}
