// SPDX-License-Identifier: Apache-2.0

#include "provstamp/cli.hpp"

int main(int argc, char** argv)
{
    return provstamp::cli::run(argc, argv);
}
