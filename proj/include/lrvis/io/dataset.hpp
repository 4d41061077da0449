// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "lrvis/lr/volume.hpp"

namespace lrvis::io {

/// Parses the dataset document. Elements are taken verbatim when present and
/// derived from the knot grid otherwise; supports are not bound. Throws
/// FormatError naming the offending field or function index.
lr::LRSplineVolume dataset_from_json(const nlohmann::json& doc);
nlohmann::json dataset_to_json(const lr::LRSplineVolume& vol);

/// Parse, bind supports and validate. Validation failures raise
/// ValidationError carrying the report summary.
lr::LRSplineVolume load_dataset(const std::filesystem::path& path);
lr::LRSplineVolume parse_dataset(const std::string& text);

void save_dataset(const lr::LRSplineVolume& vol, const std::filesystem::path& path);
std::string dump_dataset(const lr::LRSplineVolume& vol);

}  // namespace lrvis::io
