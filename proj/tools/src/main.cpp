#include "bbdrag/cli/cli.hpp"

int main(int argc, char** argv)
{
    return bbdrag::cli::run(argc, argv);
}
