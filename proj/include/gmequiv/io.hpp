#pragma once

// JSON specs for kernels, functions and run configurations, and CSV writers
// with '#' metadata headers.
//
// Kernel spec:    "bm" | "ou" | "bridge" | "slepian"
//                 {"preset": "ou", "params": {"L": 2.0}}
//                 {"name": "k", "u": "<expr>", "v": "<expr>"}
// Function spec:  {"coeffs": [[k, re, im], ...]}   (k >= 0, Hermitian completion)

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/expression.hpp"
#include "gmequiv/fourier.hpp"
#include "gmequiv/kernel.hpp"
#include "json.hpp"

namespace gmequiv {

using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw Error(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw Error(std::string("unknown field '") + key + "' in " + what);
    }
  }
}

}  // namespace detail

inline KernelPtr kernel_from_json(const Json& j) {
  if (j.is_string()) return make_preset(j.get<std::string>());
  detail::reject_unknown(j, {"preset", "params", "name", "u", "v"}, "kernel spec");
  if (j.contains("preset")) {
    if (j.contains("u") || j.contains("v")) throw Error("kernel spec mixes 'preset' with 'u'/'v'");
    double rate = 1.0;
    if (j.contains("params")) {
      detail::reject_unknown(j["params"], {"L"}, "kernel params");
      rate = j["params"].value("L", 1.0);
    }
    return make_preset(j["preset"].get<std::string>(), rate);
  }
  if (!j.contains("u") || !j.contains("v")) throw Error("kernel spec needs 'preset' or both 'u' and 'v'");
  return make_kernel(j.value("name", std::string("custom")), j["u"].get<std::string>(),
                     j["v"].get<std::string>());
}

inline KernelPtr kernel_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    return make_preset(text);
  }
  return kernel_from_json(j);
}

inline FourierFunction function_from_json(const Json& j) {
  detail::reject_unknown(j, {"coeffs"}, "function spec");
  std::vector<std::pair<int, Complex>> coeffs;
  for (const auto& row : j.at("coeffs")) {
    if (!row.is_array() || row.size() < 2 || row.size() > 3) {
      throw Error("function coefficient rows are [k, re] or [k, re, im]");
    }
    const int k = row[0].get<int>();
    if (k < 0) throw Error("give coefficients for k >= 0; negative frequencies are implied");
    coeffs.emplace_back(k, Complex(row[1].get<double>(), row.size() == 3 ? row[2].get<double>() : 0.0));
  }
  return FourierFunction(coeffs);
}

inline FourierFunction function_from_json(std::string_view text) { return function_from_json(Json::parse(text)); }

inline Json function_to_json(const FourierFunction& f) {
  Json rows = Json::array();
  for (const auto& [k, theta] : f.coefficients())
    if (k >= 0) rows.push_back({k, theta.real(), theta.imag()});
  return Json{{"coeffs", rows}};
}

/// "16..512" (doubling), "8,16,24" or "64".
inline std::vector<int> parse_n_grid(std::string_view text) {
  std::vector<int> out;
  const auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1) {
      throw Error("invalid n '" + std::string(s) + "'");
    }
    return v;
  };
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw Error("empty n range");
    for (long long n = lo; n <= hi; n *= 2) out.push_back(static_cast<int>(n));
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(to_int(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw Error("n values must be strictly increasing");
  return out;
}

inline std::string format_n_grid(const std::vector<int>& ns) {
  std::string s;
  for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? "," : "") + std::to_string(ns[i]);
  return s;
}

/// Everything needed to re-run one subcommand.
struct RunConfig {
  std::string subcommand;
  Json kernel = "bm";
  std::optional<Json> function;
  std::vector<int> n{64};
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  int grid_density = 20;
  std::string family;
  std::optional<double> target;
  double beta = 1.0;
  double L = 1.0;
  std::string stat;
  std::string variant;
  int draws = 0;

  Json to_json() const {
    Json j;
    j["subcommand"] = subcommand;
    j["kernel"] = kernel;
    j["function"] = function ? *function : Json(nullptr);
    j["n"] = n;
    j["seed"] = seed;
    j["out"] = out;
    j["format"] = format;
    j["grid_density"] = grid_density;
    j["family"] = family;
    j["target"] = target ? Json(*target) : Json(nullptr);
    j["beta"] = beta;
    j["L"] = L;
    j["stat"] = stat;
    j["variant"] = variant;
    j["draws"] = draws;
    return j;
  }

  static RunConfig from_json(const Json& j) {
    detail::reject_unknown(j,
                           {"subcommand", "kernel", "function", "n", "seed", "out", "format", "grid_density",
                            "family", "target", "beta", "L", "stat", "variant", "draws"},
                           "run config");
    RunConfig c;
    c.subcommand = j.value("subcommand", c.subcommand);
    if (j.contains("kernel")) c.kernel = j["kernel"];
    if (j.contains("function") && !j["function"].is_null()) c.function = j["function"];
    if (j.contains("n")) {
      c.n = j["n"].is_number() ? std::vector<int>{j["n"].get<int>()} : j["n"].get<std::vector<int>>();
    }
    c.seed = j.value("seed", c.seed);
    c.out = j.value("out", c.out);
    c.format = j.value("format", c.format);
    if (c.format != "csv" && c.format != "json") throw Error("format must be csv or json");
    c.grid_density = j.value("grid_density", c.grid_density);
    c.family = j.value("family", c.family);
    if (j.contains("target") && !j["target"].is_null()) c.target = j["target"].get<double>();
    c.beta = j.value("beta", c.beta);
    c.L = j.value("L", c.L);
    c.stat = j.value("stat", c.stat);
    c.variant = j.value("variant", c.variant);
    c.draws = j.value("draws", c.draws);
    return c;
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// CSV with '#'-prefixed metadata lines ahead of the header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void meta(const std::string& key, const std::string& value) { out_ << "# " << key << '=' << value << '\n'; }

  void header(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (auto c : columns) {
      out_ << (first ? "" : ",") << c;
      first = false;
    }
    out_ << '\n';
  }

  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ","), write(cells), first = false), ...);
    out_ << '\n';
  }

 private:
  void write(double x) { out_ << detail::format_double(x); }
  void write(int x) { out_ << x; }
  void write(std::size_t x) { out_ << x; }
  void write(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out_ << s;
      return;
    }
    out_ << '"';
    for (char ch : s) out_ << (ch == '"' ? "\"\"" : std::string(1, ch));
    out_ << '"';
  }
  void write(const char* s) { write(std::string(s)); }

  std::ostream& out_;
};

}  // namespace gmequiv
