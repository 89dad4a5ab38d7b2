#pragma once

#include <filesystem>
#include <ostream>

namespace afdm::cli {

// Recognizes every CSV the driver writes by its header and prints a text
// table: detections, cut metrics, BER, detection rates or complexity fits.
void summarize(const std::filesystem::path& csv, std::ostream& out);

}  // namespace afdm::cli
