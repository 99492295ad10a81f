#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "swloc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const swloc::cli::RunConfig cfg = swloc::cli::parse_args(args);
        return swloc::cli::run(cfg);
    } catch (const swloc::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << swloc::cli::usage_text();
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
