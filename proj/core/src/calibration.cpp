#include "apcss/calibration.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "apcss/apc.hpp"
#include "apcss/errors.hpp"
#include "apcss/format.hpp"
#include "apcss/parallel.hpp"
#include "apcss/random.hpp"

namespace apcss {
namespace {

constexpr std::uint64_t kPhase1Domain = 1;
constexpr std::uint64_t kPhase2Domain = 2;
constexpr std::string_view kMagic = "apcss-null-calibration";
constexpr std::string_view kChecksumKey = "checksum: crc32:";

DataTable null_table(const LayoutDims& dims, std::uint64_t seed,
                     std::uint64_t domain, std::uint64_t index) {
  Rng rng = Rng::for_stream(seed, domain, index);
  std::vector<double> values(dims.total());
  for (auto& v : values) v = standard_normal(rng);
  return DataTable(dims, std::move(values));
}

std::string crc32_hex(std::string_view payload) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks
  std::size_t offset = 0;
  while (offset < payload.size()) {
    const std::size_t chunk = std::min<std::size_t>(payload.size() - offset, 1u << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(payload.data() + offset),
                static_cast<uInt>(chunk));
    offset += chunk;
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const std::size_t first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(kSpace) - first + 1);
}

// Re-throws field parse failures as corrupt-calibration errors.
template <typename Fn>
auto parse_field(Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw CorruptCalibration(std::string("calibration file: ") + e.what());
  }
}

}  // namespace

void NullCalibration::validate() const {
  if (dims.rows < 2 || dims.cols < 2 || dims.reps < 1) {
    throw CorruptCalibration("calibration dims " + dims.to_string() + " invalid");
  }
  for (double v : {e0_crad, v0_crad, e0_rcad, v0_rcad}) {
    if (!std::isfinite(v)) throw CorruptCalibration("calibration constant not finite");
  }
  if (!(v0_crad > 0.0) || !(v0_rcad > 0.0)) {
    throw CorruptCalibration("calibration null variances must be positive");
  }
  if (null_sample.size() != n_phase2) {
    throw CorruptCalibration("calibration null sample has " +
                             std::to_string(null_sample.size()) +
                             " values, n_phase2 says " + std::to_string(n_phase2));
  }
  if (n_phase1 < 2 || n_phase2 < 2) {
    throw CorruptCalibration("calibration replicate counts must be >= 2");
  }
  if (!std::is_sorted(null_sample.begin(), null_sample.end())) {
    throw CorruptCalibration("calibration null sample is not sorted");
  }
  if (format_version != kCalibrationFormatVersion) {
    throw CalibrationVersionMismatch("calibration format version " +
                                     std::to_string(format_version) + " unsupported");
  }
}

std::vector<ScaledMaxima> null_scaled_maxima(const LayoutDims& dims, AlignmentMethod method,
                                             std::uint64_t n, std::uint64_t seed,
                                             std::size_t workers) {
  dims.validate();
  std::vector<ScaledMaxima> out(n);
  parallel_for(n, workers, [&](std::size_t r) {
    out[r] = apc_scaled_maxima(null_table(dims, seed, kPhase1Domain, r), method);
  });
  return out;
}

NullCalibration calibrate_null(const LayoutDims& dims, AlignmentMethod method,
                               std::uint64_t n_phase1, std::uint64_t n_phase2,
                               std::uint64_t seed, std::size_t workers) {
  dims.validate();
  if (n_phase1 < 2 || n_phase2 < 2) {
    throw InvalidArgument("calibration needs at least 2 replicates per phase");
  }

  const std::vector<ScaledMaxima> phase1 =
      null_scaled_maxima(dims, method, n_phase1, seed, workers);

  double sum_c = 0.0, sum_r = 0.0;
  for (const auto& m : phase1) {
    sum_c += m.crad;
    sum_r += m.rcad;
  }
  const double n1 = static_cast<double>(n_phase1);
  NullCalibration cal;
  cal.dims = dims;
  cal.method = method;
  cal.e0_crad = sum_c / n1;
  cal.e0_rcad = sum_r / n1;
  double ss_c = 0.0, ss_r = 0.0;
  for (const auto& m : phase1) {
    ss_c += (m.crad - cal.e0_crad) * (m.crad - cal.e0_crad);
    ss_r += (m.rcad - cal.e0_rcad) * (m.rcad - cal.e0_rcad);
  }
  cal.v0_crad = ss_c / (n1 - 1.0);
  cal.v0_rcad = ss_r / (n1 - 1.0);
  if (!(cal.v0_crad > 0.0) || !(cal.v0_rcad > 0.0)) {
    throw CorruptCalibration("phase-1 null variance is zero for " + dims.to_string());
  }

  cal.null_sample.resize(n_phase2);
  parallel_for(n_phase2, workers, [&](std::size_t r) {
    const ScaledMaxima m =
        apc_scaled_maxima(null_table(dims, seed, kPhase2Domain, r), method);
    cal.null_sample[r] = apc_standardize(m, method, cal.e0_crad, cal.v0_crad,
                                         cal.e0_rcad, cal.v0_rcad)
                             .statistic;
  });
  std::sort(cal.null_sample.begin(), cal.null_sample.end());

  cal.n_phase1 = n_phase1;
  cal.n_phase2 = n_phase2;
  cal.seed = seed;
  cal.format_version = kCalibrationFormatVersion;
  return cal;
}

double critical_value(const NullCalibration& cal, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1), got " + format_double(alpha));
  }
  if (cal.null_sample.empty()) throw CorruptCalibration("empty null sample");
  const double n = static_cast<double>(cal.null_sample.size());
  // Guard against (1 - alpha) * n landing a hair above an integer.
  const double target = (1.0 - alpha) * n;
  double m = std::ceil(target);
  if (m - target > 1.0 - 1e-9) m -= 1.0;
  const auto rank = static_cast<std::size_t>(std::clamp(m, 1.0, n));
  return cal.null_sample[rank - 1];
}

double p_value(const NullCalibration& cal, double statistic) {
  const auto first = std::lower_bound(cal.null_sample.begin(),
                                      cal.null_sample.end(), statistic);
  const auto exceed = static_cast<double>(cal.null_sample.end() - first);
  return (1.0 + exceed) / (static_cast<double>(cal.null_sample.size()) + 1.0);
}

std::string calibration_to_text(const NullCalibration& cal) {
  std::string out;
  out.reserve(32 * (cal.null_sample.size() + 16));
  auto line = [&out](std::string_view key, const std::string& value) {
    out.append(key).append(": ").append(value).push_back('\n');
  };
  out.append(kMagic).push_back('\n');
  line("format_version", std::to_string(cal.format_version));
  line("I", std::to_string(cal.dims.rows));
  line("J", std::to_string(cal.dims.cols));
  line("K", std::to_string(cal.dims.reps));
  line("method", to_string(cal.method));
  line("seed", std::to_string(cal.seed));
  line("n_phase1", std::to_string(cal.n_phase1));
  line("n_phase2", std::to_string(cal.n_phase2));
  line("e0_crad", format_double(cal.e0_crad));
  line("v0_crad", format_double(cal.v0_crad));
  line("e0_rcad", format_double(cal.e0_rcad));
  line("v0_rcad", format_double(cal.v0_rcad));
  line("null_sample", std::to_string(cal.null_sample.size()));
  for (double v : cal.null_sample) out.append(format_double(v)).push_back('\n');
  const std::string crc = crc32_hex(out);
  out.append(kChecksumKey).append(crc).push_back('\n');
  return out;
}

NullCalibration calibration_from_text(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty() || trim(lines[0]) != kMagic) {
    throw CorruptCalibration("not a calibration file (missing '" +
                             std::string(kMagic) + "' header)");
  }

  // Version gate first: a future format may change everything below it.
  if (lines.size() < 2 || !lines[1].starts_with("format_version:")) {
    throw CorruptCalibration("calibration file missing format_version");
  }
  const auto version = parse_field([&] {
    return parse_uint(trim(lines[1].substr(15)), "format_version");
  });
  if (version != static_cast<std::uint64_t>(kCalibrationFormatVersion)) {
    throw CalibrationVersionMismatch("calibration format version " +
                                     std::to_string(version) + " unsupported (expected " +
                                     std::to_string(kCalibrationFormatVersion) + ")");
  }

  // Checksum covers every byte before the checksum line.
  const std::size_t crc_pos = text.rfind(kChecksumKey);
  if (crc_pos == std::string_view::npos || (crc_pos != 0 && text[crc_pos - 1] != '\n')) {
    throw CorruptCalibration("calibration file truncated (no checksum line)");
  }
  const std::string_view stored = trim(text.substr(crc_pos + kChecksumKey.size()));
  if (stored != crc32_hex(text.substr(0, crc_pos))) {
    throw CalibrationChecksumMismatch("calibration checksum mismatch");
  }

  std::map<std::string, std::string, std::less<>> fields;
  std::size_t n = 2;
  for (; n < lines.size(); ++n) {
    const std::string_view ln = lines[n];
    const std::size_t colon = ln.find(':');
    if (colon == std::string_view::npos) {
      throw CorruptCalibration("calibration header line malformed: '" +
                               std::string(ln) + "'");
    }
    const std::string key(trim(ln.substr(0, colon)));
    fields[key] = std::string(trim(ln.substr(colon + 1)));
    if (key == "null_sample") break;
  }
  auto field = [&](std::string_view key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) {
      throw CorruptCalibration("calibration file missing field '" + std::string(key) + "'");
    }
    return it->second;
  };

  NullCalibration cal;
  cal.format_version = static_cast<int>(version);
  parse_field([&] {
    cal.dims.rows = parse_uint(field("I"), "I");
    cal.dims.cols = parse_uint(field("J"), "J");
    cal.dims.reps = parse_uint(field("K"), "K");
    cal.method = parse_alignment_method(field("method"));
    cal.seed = parse_uint(field("seed"), "seed");
    cal.n_phase1 = parse_uint(field("n_phase1"), "n_phase1");
    cal.n_phase2 = parse_uint(field("n_phase2"), "n_phase2");
    cal.e0_crad = parse_double(field("e0_crad"), "e0_crad");
    cal.v0_crad = parse_double(field("v0_crad"), "v0_crad");
    cal.e0_rcad = parse_double(field("e0_rcad"), "e0_rcad");
    cal.v0_rcad = parse_double(field("v0_rcad"), "v0_rcad");
    return 0;
  });
  const auto declared = parse_field([&] { return parse_uint(field("null_sample"), "null_sample"); });

  // Sample lines run from after the null_sample header up to the checksum line.
  for (++n; n < lines.size() && !lines[n].starts_with(kChecksumKey); ++n) {
    cal.null_sample.push_back(
        parse_field([&] { return parse_double(trim(lines[n]), "null_sample"); }));
  }
  if (cal.null_sample.size() != declared) {
    throw CorruptCalibration("calibration null sample declares " +
                             std::to_string(declared) + " values, file holds " +
                             std::to_string(cal.null_sample.size()));
  }
  cal.validate();
  return cal;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() +
                  "': " + ec.message());
  }
}

void save_calibration(const NullCalibration& cal, const std::filesystem::path& path) {
  write_file_atomic(path, calibration_to_text(cal));
}

NullCalibration load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open calibration '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return calibration_from_text(buf.str());
}

}  // namespace apcss
