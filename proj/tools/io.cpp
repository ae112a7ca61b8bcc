#include "io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "polar/errors.hpp"

namespace polar::cli {

namespace {

using nlohmann::json;

std::string row_json(const Eigen::VectorXd& v) {
  std::string s = "[";
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (j) s += ", ";
    s += json_number(v(j));
  }
  s += "]";
  return s;
}

// one row per line, indented
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m,
                  const std::string& indent) {
  out << "[\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent << "  " << row_json(m.row(i).transpose());
    out << (i + 1 < m.rows() ? ",\n" : "\n");
  }
  out << indent << "]";
}

std::string quoted(const std::string& s) {
  return std::string(json(s).dump());
}

void write_instance_body(std::ostream& out, const InstanceFile& f,
                         const std::string& indent) {
  out << "{\n";
  out << indent << "  \"schema_version\": " << f.schema_version << ",\n";
  out << indent << "  \"n\": " << f.n << ",\n";
  out << indent << "  \"vectors\": ";
  write_matrix(out, f.vectors, indent + "  ");
  if (f.label || f.seed) {
    out << ",\n" << indent << "  \"metadata\": {";
    bool first = true;
    if (f.label) {
      out << "\"label\": " << quoted(*f.label);
      first = false;
    }
    if (f.seed) {
      if (!first) out << ", ";
      out << "\"seed\": " << *f.seed;
    }
    out << "}\n";
  } else {
    out << "\n";
  }
  out << indent << "}";
}

void write_log_linear(std::ostream& out, const char* name, const LogLinear& v,
                      const std::string& indent, bool last = false) {
  out << indent << "\"" << name << "\": {\"log\": " << json_number(v.log_value)
      << ", \"value\": " << json_number(v.value) << "}" << (last ? "\n" : ",\n");
}

void write_oracle(std::ostream& out, const OracleResult& o,
                  const std::optional<std::uint64_t>& seed,
                  const std::string& indent) {
  out << "{\n";
  out << indent << "  \"method\": \"" << method_name(o.method) << "\",\n";
  out << indent << "  \"starts\": " << o.starts << ",\n";
  out << indent << "  \"converged\": " << o.converged << ",\n";
  if (seed) out << indent << "  \"seed\": " << *seed << ",\n";
  const LogLinear v = make_log_linear(o.log_value);
  out << indent << "  \"log_value\": " << json_number(v.log_value) << ",\n";
  out << indent << "  \"value\": " << json_number(v.value) << ",\n";
  out << indent << "  \"best_y\": " << row_json(o.best_y) << "\n";
  out << indent << "}";
}

}  // namespace

std::string json_number(double v) {
  if (std::isnan(v)) {
    throw NumericalFailure("refusing to serialize NaN");
  }
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* method_name(OracleMethod m) {
  switch (m) {
    case OracleMethod::multistart_gradient:
      return "multistart_gradient";
    case OracleMethod::grid_2d:
      return "grid_2d";
    case OracleMethod::monte_carlo:
      return "monte_carlo";
  }
  return "unknown";
}

InstanceFile read_instance(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("instance is not valid JSON: ") +
                          e.what());
  }
  if (!j.is_object()) {
    throw InvalidArgument("instance must be a JSON object");
  }
  if (!j.contains("schema_version") ||
      !j["schema_version"].is_number_integer()) {
    throw InvalidArgument("instance needs an integer 'schema_version'");
  }
  InstanceFile f;
  f.schema_version = j["schema_version"].get<int>();
  if (f.schema_version != 1) {
    throw InvalidArgument("unsupported schema_version " +
                          std::to_string(f.schema_version));
  }
  if (!j.contains("n") || !j["n"].is_number_integer() ||
      j["n"].get<long long>() < 1) {
    throw InvalidArgument("instance needs a positive integer 'n'");
  }
  f.n = j["n"].get<int>();
  if (!j.contains("vectors") || !j["vectors"].is_array() ||
      static_cast<int>(j["vectors"].size()) != f.n) {
    throw InvalidArgument("'vectors' must be an array of n = " +
                          std::to_string(f.n) + " rows");
  }
  f.vectors.resize(f.n, f.n);
  for (int i = 0; i < f.n; ++i) {
    const json& row = j["vectors"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != f.n) {
      throw InvalidArgument("vectors[" + std::to_string(i) +
                            "] must hold exactly n = " + std::to_string(f.n) +
                            " numbers");
    }
    for (int c = 0; c < f.n; ++c) {
      if (!row[c].is_number()) {
        throw InvalidArgument("vectors[" + std::to_string(i) + "][" +
                              std::to_string(c) + "] is not a number");
      }
      f.vectors(i, c) = row[c].get<double>();
    }
  }
  if (j.contains("metadata")) {
    const json& meta = j["metadata"];
    if (!meta.is_object()) {
      throw InvalidArgument("'metadata' must be an object");
    }
    if (meta.contains("label") && meta["label"].is_string()) {
      f.label = meta["label"].get<std::string>();
    }
    if (meta.contains("seed") && meta["seed"].is_number_unsigned()) {
      f.seed = meta["seed"].get<std::uint64_t>();
    }
  }
  return f;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open instance file '" + path + "'");
  }
  return read_instance(in);
}

void write_instance(std::ostream& out, const InstanceFile& f) {
  write_instance_body(out, f, "");
  out << "\n";
}

VectorSystem to_system(const InstanceFile& f) {
  return VectorSystem(f.vectors);
}

void write_report(std::ostream& out, const Report& r) {
  out << "{\n";
  out << "  \"schema_version\": 1,\n";
  out << "  \"command\": " << quoted(r.command) << ",\n";

  if (r.instance) {
    out << "  \"instance\": ";
    write_instance_body(out, *r.instance, "  ");
    out << ",\n";
  }

  if (r.bounds) {
    const BoundsReport& b = *r.bounds;
    out << "  \"bounds\": {\n";
    out << "    \"n\": " << b.n << ",\n";
    out << "    \"eigenvalues\": " << row_json(b.eigenvalues) << ",\n";
    write_log_linear(out, "marcus", b.marcus, "    ");
    write_log_linear(out, "harmonic", b.harmonic, "    ");
    write_log_linear(out, "geometric", b.geometric, "    ");
    write_log_linear(out, "conjecture", b.conjecture, "    ");
    write_log_linear(out, "cn_lower_reference", b.cn_lower_reference, "    ");
    write_log_linear(out, "cn_upper_reference", b.cn_upper_reference, "    ",
                     true);
    out << "  },\n";
  }

  if (r.witness) {
    const WitnessResult& w = *r.witness;
    out << "  \"witness\": {\n";
    out << "    \"y\": " << row_json(w.y) << ",\n";
    out << "    \"factors\": " << row_json(w.factors) << ",\n";
    out << "    \"log_product\": " << json_number(w.log_product) << ",\n";
    out << "    \"log_bound\": " << json_number(w.log_bound) << ",\n";
    out << "    \"slack\": " << json_number(w.slack) << ",\n";
    out << "    \"prenormalization_norm\": "
        << json_number(w.prenormalization_norm);
    if (r.include_trace) {
      out << ",\n    \"trace\": [\n";
      for (std::size_t i = 0; i < w.trace.size(); ++i) {
        const DescentLevel& l = w.trace[i];
        out << "      {\"dim\": " << l.dim
            << ", \"center_last\": " << json_number(l.center_last)
            << ", \"volume\": " << json_number(l.volume)
            << ", \"slice_volume\": " << json_number(l.slice_volume)
            << ", \"step\": " << json_number(l.step)
            << ", \"coordinate\": " << json_number(l.coordinate)
            << ", \"reflected\": " << (l.reflected ? "true" : "false") << "}"
            << (i + 1 < w.trace.size() ? ",\n" : "\n");
      }
      out << "    ]\n";
    } else {
      out << "\n";
    }
    out << "  },\n";
  }

  if (r.verification) {
    const VerificationRecord& v = *r.verification;
    out << "  \"verification\": {\n";
    out << "    \"pass\": " << (v.pass ? "true" : "false") << ",\n";
    out << "    \"norm_ok\": " << (v.norm_ok ? "true" : "false") << ",\n";
    out << "    \"bound_ok\": " << (v.bound_ok ? "true" : "false") << ",\n";
    out << "    \"y_norm\": " << json_number(v.y_norm) << ",\n";
    out << "    \"log_product\": " << json_number(v.log_product) << ",\n";
    out << "    \"log_bound\": " << json_number(v.log_bound) << ",\n";
    out << "    \"slack\": " << json_number(v.slack) << "\n";
    out << "  },\n";
  }

  if (r.oracle) {
    out << "  \"oracle\": ";
    write_oracle(out, *r.oracle, r.oracle_seed, "  ");
    out << ",\n";
  }

  if (r.explorer) {
    const ExplorerReport& e = *r.explorer;
    out << "  \"explorer\": {\n";
    out << "    \"n\": " << e.n << ",\n";
    out << "    \"normalized_value\": " << json_number(e.normalized_value)
        << ",\n";
    out << "    \"iterations\": " << e.iterations << ",\n";
    out << "    \"seed\": " << e.seed << ",\n";
    out << "    \"anomaly\": " << (e.anomaly ? "true" : "false") << ",\n";
    out << "    \"history\": [";
    for (std::size_t i = 0; i < e.history.size(); ++i) {
      if (i) out << ", ";
      out << "[" << e.history[i].first << ", "
          << json_number(e.history[i].second) << "]";
    }
    out << "],\n";
    out << "    \"best_system\": ";
    write_matrix(out, e.best_system.matrix(), "    ");
    out << "\n  },\n";
  }

  out << "  \"timing_seconds\": " << json_number(r.timing_seconds) << "\n";
  out << "}\n";
}

}  // namespace polar::cli
