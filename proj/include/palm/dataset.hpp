#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "palm/image.hpp"
#include "palm/spectrum.hpp"

namespace palm {

struct SampleRecord {
  int person_id = 0;
  int sample_index = 0;
  Spectrum spectrum = Spectrum::Red;
  std::string image_path;  // relative to the manifest directory

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct DatasetManifest {
  int persons = 0;
  int samples_per_person = 0;
  std::vector<SampleRecord> records;
  std::filesystem::path root;  // directory holding manifest.json; not serialized

  // Distinct person ids, ascending.
  std::vector<int> person_ids() const;
  std::filesystem::path image_path(const SampleRecord& r) const { return root / r.image_path; }
  // Throws DatasetError(MissingRecord) when absent.
  const SampleRecord& find(int person, int sample, Spectrum s) const;
};

class DatasetError : public std::runtime_error {
 public:
  enum class Kind { MissingFile, Parse, IncompleteTuple, DuplicateKey, CountMismatch, MissingRecord };

  DatasetError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr const char* kManifestFileName = "manifest.json";

// Accepts either the manifest file or a directory containing manifest.json.
// Every invariant is checked eagerly: unique (person, sample, spectrum) keys,
// all four spectra for every sample, sample indices 0..samples_per_person-1
// for every person, and records = persons * samples_per_person * 4.
DatasetManifest load_manifest(const std::filesystem::path& path);

// Writes manifest.json into dir. Throws IoError.
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& dir);

// Same checks as load_manifest, for in-memory manifests.
void validate_manifest(const DatasetManifest& manifest);

}  // namespace palm
