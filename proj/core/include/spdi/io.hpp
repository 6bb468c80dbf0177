#pragma once

#include <string>
#include <string_view>

#include "spdi/explorer.hpp"
#include "spdi/model.hpp"

namespace spdi {

// All parsers throw ParseError carrying the 1-based line number.

Spdi parse_spdi(std::string_view text);
std::string write_spdi(const Spdi& spdi);

ReachTask parse_task(std::string_view text, const Spdi& spdi);
std::string write_task(const Spdi& spdi, const ReachTask& task);

// Throws Error unless the result is REACHABLE with a witness.
std::string write_witness(const Spdi& spdi, const ReachResult& result);
std::string write_witness(const Spdi& spdi, const Witness& witness);
Witness parse_witness(std::string_view text, const Spdi& spdi);

// Shortest form is not used: always 17 significant digits.
std::string format_number(double x);

std::string read_file(const std::string& path);
// Writes via a temporary file so a failure leaves no partial output.
void write_file(const std::string& path, std::string_view content);

}  // namespace spdi
