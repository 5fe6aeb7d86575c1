#include "pmod/cli.hpp"

int main(int argc, char** argv) {
    return pmod::cli_main(argc, argv);
}
