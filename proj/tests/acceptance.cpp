// acceptance.cpp — Runs acceptance criteria 1..10 and prints one PASS/FAIL line each

#include <iostream>

#include "qcool/validation.hpp"

int main() {
    qcool::validation::Options opts;
    const auto results = qcool::validation::run_acceptance(opts);
    qcool::validation::print_results(std::cout, results);
    return qcool::validation::all_passed(results) ? 0 : 1;
}
