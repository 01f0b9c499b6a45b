#include <iostream>

#include "qproc/cli/cli.h"

int main(int argc, char **argv) {
    return qproc::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
