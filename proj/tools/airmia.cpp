#include "airmia/cli.hpp"

int main(int argc, char** argv)
{
    return airmia::cli::dispatch(argc, argv);
}
