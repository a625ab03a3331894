#include <string>
#include <vector>

#include "gridtie/cli_app.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return gridtie::run_cli(args);
}
