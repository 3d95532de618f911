#include "palm/model_io.hpp"

#include <fstream>
#include <iterator>

#include <json.hpp>

#include "palm/error.hpp"

namespace palm {

using nlohmann::json;

namespace {

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

Matrix matrix_from_rows(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw InvalidInput("model: template must be a list of rows");
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto values = rows[r].get<std::vector<double>>();
    if (values.size() != cols) throw InvalidInput("model: ragged template rows");
    std::copy(values.begin(), values.end(), m.row(r).begin());
  }
  return m;
}

}  // namespace

std::string model_to_json(const GalleryModel& model) {
  json doc;
  doc["N"] = model.block_size;
  doc["M"] = model.blocks;
  doc["alpha"] = model.weights.alpha;
  doc["w"] = model.weights.w;
  json persons = json::array();
  for (const auto& t : model.templates) {
    json templates;
    for (Spectrum s : kAllSpectra) {
      templates[std::string(spectrum_code(s))] = matrix_rows(t.templates[index_of(s)]);
    }
    persons.push_back({{"id", t.person_id}, {"templates", std::move(templates)}});
  }
  doc["persons"] = std::move(persons);
  return doc.dump();
}

GalleryModel model_from_json(const std::string& text) {
  GalleryModel model;
  try {
    const json doc = json::parse(text);
    model.block_size = doc.at("N").get<int>();
    model.blocks = doc.at("M").get<std::size_t>();
    const auto alpha = doc.at("alpha").get<std::vector<double>>();
    const auto w = doc.at("w").get<std::vector<double>>();
    if (alpha.size() != kFeatureCount || w.size() != kFeatureCount) {
      throw InvalidInput("model: alpha and w must have 14 entries");
    }
    std::copy(alpha.begin(), alpha.end(), model.weights.alpha.begin());
    std::copy(w.begin(), w.end(), model.weights.w.begin());
    for (const auto& p : doc.at("persons")) {
      PersonTemplate t;
      t.person_id = p.at("id").get<int>();
      const json& templates = p.at("templates");
      for (Spectrum s : kAllSpectra) {
        t.templates[index_of(s)] = matrix_from_rows(templates.at(std::string(spectrum_code(s))));
      }
      model.templates.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("model: ") + e.what());
  }
  if (model.templates.empty()) throw InvalidInput("model: no persons");
  model.validate();
  return model;
}

void save_model(const GalleryModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << model_to_json(model) << '\n';
  if (!out) throw IoError(path.string() + ": write failed");
}

GalleryModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open model");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace palm
