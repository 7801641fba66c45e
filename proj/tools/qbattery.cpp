#include <qbattery/cli.hpp>

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
  using namespace qbattery;
  std::vector<std::string> notices;
  cli::run_config config;
  try {
    config = cli::parse_args(argc, argv, &notices);
  } catch (const cli::help_requested& h) {
    std::cout << h.text;
    return 0;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for the list of options.\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& n : notices) std::cerr << "notice: " << n << "\n";
  try {
    return cli::run(config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
