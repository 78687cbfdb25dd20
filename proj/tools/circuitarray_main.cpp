#include <vector>

#include "circuitarray/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return circuitarray::run_cli(args);
}
