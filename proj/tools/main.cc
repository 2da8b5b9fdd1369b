#include <iostream>
#include <string>
#include <vector>

#include "qorder/cli.h"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qorder::cli::run(args, std::cout, std::cerr);
}
