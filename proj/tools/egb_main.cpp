#include <string>
#include <vector>

#include "egb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return egb::run_cli(args);
}
