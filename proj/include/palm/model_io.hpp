#pragma once

#include <filesystem>
#include <string>

#include "palm/classify.hpp"

namespace palm {

// JSON layout:
//   { "N": 16, "M": 64, "alpha": [14], "w": [14],
//     "persons": [ { "id": 3, "templates": { "R": [[M] x 14], "G": ..., "B": ..., "NIR": ... } } ] }
// Each template is a list of 14 rows of M numbers. Doubles are written with
// round-trip precision, so a reloaded model is bit-identical.
std::string model_to_json(const GalleryModel& model);
GalleryModel model_from_json(const std::string& text);

void save_model(const GalleryModel& model, const std::filesystem::path& path);
// Throws IoError when unreadable, InvalidInput when malformed.
GalleryModel load_model(const std::filesystem::path& path);

}  // namespace palm
