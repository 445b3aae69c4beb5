#include "cmlecon/cli.hpp"

int main(int argc, char** argv) {
    return cmlecon::cli::run_cli(argc, argv);
}
