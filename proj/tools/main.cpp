#include <string>
#include <vector>

#include "sharpineq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sharpineq::cli::run(args);
}
