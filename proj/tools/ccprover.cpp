#include "ccs/cli.hpp"

int main(int argc, char** argv) {
    return ccs::cli(std::vector<std::string>(argv + 1, argv + argc));
}
