#include "serrinlab/cli.hpp"

int main(int argc, char** argv) { return serrinlab::dispatch(argc, argv); }
