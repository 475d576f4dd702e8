#include "idelta/cli.hpp"

int main(int argc, char** argv)
{
    return idelta::cli::main_entry(argc, argv);
}
