#include <string>
#include <vector>

#include "strategem/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return strategem::run_cli(args);
}
