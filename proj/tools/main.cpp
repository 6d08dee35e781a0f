#include "skewflow/cli.hpp"

int main(int argc, char** argv)
{
    return skewflow::cli::run(argc, argv);
}
