#include <cstdio>

int main() {
    std::puts("ibetk: subcommands pending");
    return 0;
}
