#include <string>
#include <vector>

#include "vigil/sim_harness.hpp"

int main(int argc, char** argv) {
    return vigil::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
