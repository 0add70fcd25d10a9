#include "vpatch/cli.hpp"

int main(int argc, char** argv) { return vpatch::dispatch(argc, argv); }
