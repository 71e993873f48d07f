#include <iostream>

int main() {
    std::cout << "topoproj CLI: subcommands pending\n";
    return 0;
}
