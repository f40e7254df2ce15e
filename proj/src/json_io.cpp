#include "opgt/json_io.hpp"

#include <fstream>
#include <sstream>

namespace opgt {

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) {
    throw InputError(where, "expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw InputError(where, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

Index read_count(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(where + "/" + key, "expected a nonnegative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  const Index rows = read_count(j, "rows", where);
  const Index cols = read_count(j, "cols", where);
  const Json& re = require(j, "re", where);
  if (!re.is_array() || static_cast<Index>(re.size()) != rows * cols) {
    throw InputError(where + "/re", "expected an array of rows*cols numbers");
  }
  const Json* im = nullptr;
  if (auto it = j.find("im"); it != j.end()) {
    im = &*it;
    if (!im->is_array() || static_cast<Index>(im->size()) != rows * cols) {
      throw InputError(where + "/im", "expected an array of rows*cols numbers");
    }
  }
  ComplexMatrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const Json& r = re[static_cast<std::size_t>(k)];
    if (!r.is_number()) {
      throw InputError(where + "/re/" + std::to_string(k), "not a number");
    }
    double imag = 0.0;
    if (im != nullptr) {
      const Json& v = (*im)[static_cast<std::size_t>(k)];
      if (!v.is_number()) {
        throw InputError(where + "/im/" + std::to_string(k), "not a number");
      }
      imag = v.get<double>();
    }
    m(k / cols, k % cols) = Complex(r.get<double>(), imag);
  }
  return m;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) {
    out.push_back(matrix_to_json(m));
  }
  return out;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) {
    throw InputError(where, "expected an array of matrices");
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(matrix_from_json(j[k], where + "/" + std::to_string(k)));
  }
  return out;
}

Json vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Index k = 0; k < v.size(); ++k) {
    out.push_back(v(k));
  }
  return out;
}

RealVector real_vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) {
    throw InputError(where, "expected an array of numbers");
  }
  RealVector v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) {
      throw InputError(where + "/" + std::to_string(k), "not a number");
    }
    v(static_cast<Index>(k)) = j[k].get<double>();
  }
  return v;
}

ComplexMatrix matrix_from_csv(const std::string& text, const std::string& where) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') {
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw InputError(where + ":" + std::to_string(line_no), "bad number \"" + cell + "\"");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(where + ":" + std::to_string(line_no), "ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw InputError(where, "empty CSV");
  }
  ComplexMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(path, "cannot open file");
  }
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + " at byte " + std::to_string(e.byte), e.what());
  }
}

}  // namespace opgt
