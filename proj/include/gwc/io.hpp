#pragma once

// State files, preset strings, grid specs and CSV output.
//
// State JSON:
//   {"dims": [2, 2], "kind": "pure",  "amps": [[re, im], ...]}
//   {"dims": [2, 2], "kind": "mixed", "density": [[[re, im], ...], ...]}
// Preset strings: "preset:<name>?key=value&key=value", e.g. "preset:wN?N=5".

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gwc/presets.hpp"
#include "gwc/qstate.hpp"

namespace gwc {

/// Raised for unreadable or unwritable files (distinct from malformed content).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyState = std::variant<PureState, DensityOperator>;

namespace detail {

inline double parse_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(),
          what + ": '" + std::string(text) + "' is not a number");
  return v;
}

inline cplx parse_complex(const nlohmann::json& j, const char* what) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          std::string(what) + ": complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline PresetParams parse_preset_params(std::string_view query) {
  PresetParams params;
  std::size_t pos = 0;
  while (pos < query.size()) {
    std::size_t end = query.find_first_of("&,", pos);
    if (end == std::string_view::npos) end = query.size();
    const std::string_view item = query.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    detail::require(eq != std::string_view::npos && eq > 0,
                    "preset parameter '" + std::string(item) + "' must be key=value");
    params[std::string(item.substr(0, eq))] = detail::parse_double(item.substr(eq + 1), "preset parameter");
    pos = end + 1;
  }
  return params;
}

/// "preset:name?k=v&k=v" -> PureState.
inline PureState parse_preset(std::string_view spec) {
  constexpr std::string_view kPrefix = "preset:";
  detail::require(spec.substr(0, kPrefix.size()) == kPrefix, "preset strings start with 'preset:'");
  spec.remove_prefix(kPrefix.size());
  const std::size_t q = spec.find('?');
  const std::string_view name = spec.substr(0, q);
  const PresetParams params = q == std::string_view::npos ? PresetParams{} : parse_preset_params(spec.substr(q + 1));
  return preset(name, params);
}

inline AnyState state_from_json(const nlohmann::json& j) {
  detail::require(j.is_object(), "state JSON must be an object");
  detail::require(j.contains("dims") && j["dims"].is_array(), "state JSON needs a 'dims' array");
  std::vector<int> dv;
  for (const auto& d : j["dims"]) {
    detail::require(d.is_number_integer(), "state JSON: dims must be integers");
    dv.push_back(d.get<int>());
  }
  HilbertDims dims(dv);
  const auto n = static_cast<Eigen::Index>(dims.total());
  std::string kind = j.value("kind", std::string(j.contains("density") ? "mixed" : "pure"));
  if (kind == "pure") {
    detail::require(j.contains("amps") && j["amps"].is_array(), "pure state JSON needs an 'amps' array");
    const auto& a = j["amps"];
    detail::require(static_cast<Eigen::Index>(a.size()) == n,
                    "state JSON: amps has " + std::to_string(a.size()) + " entries, dims imply " +
                        std::to_string(n));
    CVector amps(n);
    for (Eigen::Index i = 0; i < n; ++i) amps(i) = detail::parse_complex(a[static_cast<std::size_t>(i)], "amps");
    return PureState(dims, amps);
  }
  detail::require(kind == "mixed", "state JSON: kind must be 'pure' or 'mixed'");
  detail::require(j.contains("density") && j["density"].is_array(), "mixed state JSON needs a 'density' matrix");
  const auto& rows = j["density"];
  detail::require(static_cast<Eigen::Index>(rows.size()) == n, "state JSON: density must be square of size prod(dims)");
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    detail::require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n,
                    "state JSON: density must be square of size prod(dims)");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = detail::parse_complex(row[static_cast<std::size_t>(c)], "density");
  }
  return DensityOperator(dims, m);
}

inline nlohmann::json state_to_json(const AnyState& state) {
  nlohmann::json j;
  const auto pair = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
  if (const auto* psi = std::get_if<PureState>(&state)) {
    j["dims"] = psi->dims().values();
    j["kind"] = "pure";
    j["amps"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < psi->amps().size(); ++i) j["amps"].push_back(pair(psi->amps()(i)));
    return j;
  }
  const auto& rho = std::get<DensityOperator>(state);
  j["dims"] = rho.dims().values();
  j["kind"] = "mixed";
  j["density"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) row.push_back(pair(rho.matrix()(r, c)));
    j["density"].push_back(std::move(row));
  }
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

/// A preset string or the path of a state JSON file. JSON syntax errors surface as DomainError.
inline AnyState load_state(const std::string& source) {
  if (source.rfind("preset:", 0) == 0) return parse_preset(source);
  const std::string text = read_file(source);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("state file '" + source + "' is not valid JSON: " + e.what());
  }
  return state_from_json(j);
}

inline DensityOperator as_density(const AnyState& s) {
  if (const auto* psi = std::get_if<PureState>(&s)) return psi->density();
  return std::get<DensityOperator>(s);
}

/// lo, lo + step, ... below hi, then hi itself.
inline std::vector<double> closed_grid(double lo, double hi, double step) {
  detail::require(lo <= hi, "grid spec needs lo <= hi");
  detail::require(step > 0.0, "grid spec needs step > 0");
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double v = lo + static_cast<double>(k) * step;
    if (v > hi - 1e-9 * step) break;
    out.push_back(v);
  }
  out.push_back(hi);
  return out;
}

/// "v" or "lo:hi:step". The grid is closed: hi is always the last point.
inline std::vector<double> parse_grid(std::string_view spec) {
  const std::size_t c1 = spec.find(':');
  if (c1 == std::string_view::npos) return {detail::parse_double(spec, "grid value")};
  const std::size_t c2 = spec.find(':', c1 + 1);
  detail::require(c2 != std::string_view::npos && spec.find(':', c2 + 1) == std::string_view::npos,
                  "grid spec must be lo:hi:step");
  const double lo = detail::parse_double(spec.substr(0, c1), "grid lo");
  const double hi = detail::parse_double(spec.substr(c1 + 1, c2 - c1 - 1), "grid hi");
  const double step = detail::parse_double(spec.substr(c2 + 1), "grid step");
  return closed_grid(lo, hi, step);
}

/// 12 significant digits, shortest form, '.' separator regardless of locale.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        out += format_number(row[c]);
      }
      out += '\n';
    }
    return out;
  }
};

}  // namespace gwc
