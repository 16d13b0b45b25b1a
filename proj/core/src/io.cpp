#include "apcss/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "apcss/errors.hpp"
#include "apcss/format.hpp"

namespace apcss {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    parts.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

DataTable read_data_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::map<Key, double> cells;
  LayoutDims dims{0, 0, 0};

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto parts = split_commas(text);
    if (!header_seen) {
      if (parts.size() != 4 || parts[0] != "i" || parts[1] != "j" || parts[2] != "k" ||
          parts[3] != "y") {
        throw InvalidArgument("line " + std::to_string(line_no) +
                              ": expected header 'i,j,k,y'");
      }
      header_seen = true;
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (parts.size() != 4) {
      throw InvalidArgument(where + ": expected 4 fields, got " + std::to_string(parts.size()));
    }
    const std::size_t i = parse_uint(parts[0], where + " i");
    const std::size_t j = parse_uint(parts[1], where + " j");
    const std::size_t k = parse_uint(parts[2], where + " k");
    const double y = parse_double(parts[3], where + " y");
    if (i == 0 || j == 0 || k == 0) {
      throw InvalidArgument(where + ": indices are 1-based");
    }
    if (!cells.emplace(Key{i, j, k}, y).second) {
      throw InvalidArgument(where + ": duplicate cell (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(k) + ")");
    }
    dims.rows = std::max(dims.rows, i);
    dims.cols = std::max(dims.cols, j);
    dims.reps = std::max(dims.reps, k);
  }
  if (!header_seen) throw InvalidArgument("data file is empty (expected header 'i,j,k,y')");
  if (cells.empty()) throw InvalidArgument("data file has no observations");

  std::vector<double> values(dims.total());
  for (std::size_t i = 1; i <= dims.rows; ++i)
    for (std::size_t j = 1; j <= dims.cols; ++j)
      for (std::size_t k = 1; k <= dims.reps; ++k) {
        const auto it = cells.find(Key{i, j, k});
        if (it == cells.end()) {
          throw InvalidArgument("missing cell (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) +
                                "): design must be balanced");
        }
        values[flat_index(dims, i - 1, j - 1, k - 1)] = it->second;
      }
  return DataTable(dims, std::move(values));
}

DataTable read_data_csv(const std::filesystem::path& path) {
  std::istringstream in(read_all(path));
  return read_data_csv(in);
}

std::string data_csv(const DataTable& table) {
  const LayoutDims& d = table.dims();
  std::string out = "i,j,k,y\n";
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j)
      for (std::size_t k = 0; k < d.reps; ++k)
        out += std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
               std::to_string(k + 1) + "," + format_double(table(i, j, k)) + "\n";
  return out;
}

PowerConfigFile parse_power_config(const std::string& json_text,
                                   const std::filesystem::path& base_dir) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("power config is not valid JSON: ") + e.what());
  }

  PowerConfigFile out;
  PowerStudyConfig& s = out.study;
  std::string current = "dims";
  try {
    const json& dims = doc.at("dims");
    s.dims = {dims.at("I").get<std::size_t>(), dims.at("J").get<std::size_t>(),
              dims.at("K").get<std::size_t>()};
    current = "alpha_effects";
    s.alpha_effects = doc.at("alpha_effects").get<std::vector<double>>();
    current = "beta_effects";
    s.beta_effects = doc.at("beta_effects").get<std::vector<double>>();

    current = "interaction";
    const json& inter = doc.at("interaction");
    const std::string type = inter.at("type").get<std::string>();
    if (type == "product") {
      s.family = InteractionFamily::Product;
    } else if (type == "specific") {
      s.family = InteractionFamily::Specific;
      const auto row = inter.value("row", std::size_t{1});
      const auto col = inter.value("col", std::size_t{1});
      if (row == 0 || col == 0) throw InvalidArgument("field 'interaction': row/col are 1-based");
      s.row_offset = row - 1;
      s.col_offset = col - 1;
    } else {
      throw InvalidArgument("field 'interaction': unknown type '" + type + "'");
    }

    current = "error";
    s.error = parse_error_distribution(doc.at("error").get<std::string>());

    current = "magnitudes";
    if (doc.contains("magnitudes")) {
      s.magnitudes = doc.at("magnitudes").get<std::vector<double>>();
    } else {
      current = "max_magnitude";
      s.magnitudes = default_magnitude_grid(doc.at("max_magnitude").get<double>(),
                                            doc.value("grid_points", std::size_t{9}));
    }

    current = "tests";
    for (const auto& t : doc.at("tests")) s.tests.push_back(parse_test_kind(t.get<std::string>()));
    current = "n_sims";
    s.n_sims = doc.at("n_sims").get<std::uint64_t>();
    current = "seed";
    s.seed = doc.at("seed").get<std::uint64_t>();
    current = "alpha";
    s.alpha = doc.value("alpha", 0.05);

    current = "calibrations";
    if (doc.contains("calibrations")) {
      const json& cals = doc.at("calibrations");
      if (cals.contains("average"))
        out.average_calibration = base_dir / cals.at("average").get<std::string>();
      if (cals.contains("median"))
        out.median_calibration = base_dir / cals.at("median").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw InvalidArgument("power config field '" + current + "': " + e.what());
  }
  s.validate();
  return out;
}

PowerConfigFile read_power_config(const std::filesystem::path& path) {
  return parse_power_config(read_all(path), path.parent_path());
}

}  // namespace apcss
