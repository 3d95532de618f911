#include "palm/dataset.hpp"

#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include <json.hpp>

#include "palm/error.hpp"

namespace palm {

using nlohmann::json;

std::vector<int> DatasetManifest::person_ids() const {
  std::set<int> ids;
  for (const auto& r : records) ids.insert(r.person_id);
  return {ids.begin(), ids.end()};
}

const SampleRecord& DatasetManifest::find(int person, int sample, Spectrum s) const {
  for (const auto& r : records) {
    if (r.person_id == person && r.sample_index == sample && r.spectrum == s) return r;
  }
  throw DatasetError(DatasetError::Kind::MissingRecord,
                     "no record for person " + std::to_string(person) + " sample " +
                         std::to_string(sample) + " spectrum " + std::string(spectrum_code(s)));
}

void validate_manifest(const DatasetManifest& m) {
  using Kind = DatasetError::Kind;
  if (m.persons < 1 || m.samples_per_person < 1) {
    throw DatasetError(Kind::CountMismatch, "manifest: persons and samples_per_person must be >= 1");
  }

  std::set<std::tuple<int, int, int>> keys;
  std::map<std::pair<int, int>, unsigned> spectra_seen;  // (person, sample) -> bitmask
  for (const auto& r : m.records) {
    const auto key = std::make_tuple(r.person_id, r.sample_index, static_cast<int>(r.spectrum));
    if (!keys.insert(key).second) {
      throw DatasetError(Kind::DuplicateKey,
                         "manifest: duplicate record for person " + std::to_string(r.person_id) +
                             " sample " + std::to_string(r.sample_index) + " spectrum " +
                             std::string(spectrum_code(r.spectrum)));
    }
    if (r.sample_index < 0 || r.sample_index >= m.samples_per_person) {
      throw DatasetError(Kind::CountMismatch,
                         "manifest: sample index " + std::to_string(r.sample_index) +
                             " outside 0.." + std::to_string(m.samples_per_person - 1));
    }
    spectra_seen[{r.person_id, r.sample_index}] |= 1u << index_of(r.spectrum);
  }

  for (const auto& [ps, mask] : spectra_seen) {
    if (mask != 0b1111u) {
      std::string missing;
      for (Spectrum s : kAllSpectra) {
        if (!(mask & (1u << index_of(s)))) missing += " " + std::string(spectrum_code(s));
      }
      throw DatasetError(Kind::IncompleteTuple,
                         "manifest: person " + std::to_string(ps.first) + " sample " +
                             std::to_string(ps.second) + " missing spectra:" + missing);
    }
  }

  std::map<int, int> samples_per_person;
  for (const auto& [ps, mask] : spectra_seen) ++samples_per_person[ps.first];
  if (static_cast<int>(samples_per_person.size()) != m.persons) {
    throw DatasetError(Kind::CountMismatch,
                       "manifest: declares " + std::to_string(m.persons) + " persons, records hold " +
                           std::to_string(samples_per_person.size()));
  }
  for (const auto& [person, count] : samples_per_person) {
    if (count != m.samples_per_person) {
      throw DatasetError(Kind::CountMismatch,
                         "manifest: person " + std::to_string(person) + " has " +
                             std::to_string(count) + " samples, expected " +
                             std::to_string(m.samples_per_person));
    }
  }
  const std::size_t expected =
      static_cast<std::size_t>(m.persons) * m.samples_per_person * kSpectrumCount;
  if (m.records.size() != expected) {
    throw DatasetError(Kind::CountMismatch, "manifest: expected " + std::to_string(expected) +
                                                " records, found " +
                                                std::to_string(m.records.size()));
  }
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  using Kind = DatasetError::Kind;
  const auto file = std::filesystem::is_directory(path) ? path / kManifestFileName : path;
  std::ifstream in(file);
  if (!in) throw DatasetError(Kind::MissingFile, file.string() + ": cannot open manifest");

  DatasetManifest m;
  m.root = file.parent_path();
  try {
    const json doc = json::parse(in);
    m.persons = doc.at("persons").get<int>();
    m.samples_per_person = doc.at("samples_per_person").get<int>();
    for (const auto& rec : doc.at("records")) {
      SampleRecord r;
      r.person_id = rec.at("person").get<int>();
      r.sample_index = rec.at("sample").get<int>();
      const auto code = rec.at("spectrum").get<std::string>();
      const auto spectrum = parse_spectrum(code);
      if (!spectrum) throw DatasetError(Kind::Parse, "unknown spectrum \"" + code + "\"");
      r.spectrum = *spectrum;
      r.image_path = rec.at("path").get<std::string>();
      m.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw DatasetError(Kind::Parse, file.string() + ": " + e.what());
  } catch (const DatasetError& e) {
    throw DatasetError(e.kind(), file.string() + ": " + e.what());
  }
  validate_manifest(m);
  return m;
}

void save_manifest(const DatasetManifest& m, const std::filesystem::path& dir) {
  json records = json::array();
  for (const auto& r : m.records) {
    records.push_back({{"person", r.person_id},
                       {"sample", r.sample_index},
                       {"spectrum", spectrum_code(r.spectrum)},
                       {"path", r.image_path}});
  }
  json doc;
  doc["persons"] = m.persons;
  doc["samples_per_person"] = m.samples_per_person;
  doc["records"] = std::move(records);

  const auto file = dir / kManifestFileName;
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw IoError(file.string() + ": cannot open for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw IoError(file.string() + ": write failed");
}

}  // namespace palm
