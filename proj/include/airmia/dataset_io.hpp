#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "airmia/rfsim.hpp"

namespace airmia::io {

// CSV header shared by every exported dataset.
std::string dataset_csv_header();

// One row per sample; features printed with 9 decimals.
std::string dataset_to_csv(const std::vector<rfsim::SignalSample>& samples);

// Parses dataset_to_csv output. `origin` names the source in error messages.
std::vector<rfsim::SignalSample> dataset_from_csv(std::string_view text, const std::string& origin = "<csv>");

void write_dataset_csv(const std::filesystem::path& path, const std::vector<rfsim::SignalSample>& samples);
std::vector<rfsim::SignalSample> read_dataset_csv(const std::filesystem::path& path);

// Write to a sibling temp file, then rename over the target.
void atomic_write_text(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

}  // namespace airmia::io
