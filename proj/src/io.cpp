#include "shapeforce/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace shapeforce {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader =
    "tx_mm,ty_mm,tz_mm,rx_rad,ry_rad,rz_rad,fx_n,fy_n,fz_n,tx_nm,ty_nm,tz_nm";

std::string format_double(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

json pose_to_json(const Pose& p) {
  const auto flat = p.flatten();
  return json(flat);
}

Pose pose_from_json(const json& j) {
  if (!j.is_array() || j.size() != 12) throw std::invalid_argument("pose: expected 12 numbers");
  std::array<double, 12> flat{};
  for (std::size_t i = 0; i < 12; ++i) flat[i] = j[i].get<double>();
  return Pose::from_flat(flat);
}

json vec6_to_json(const Vec6& v) {
  json j = json::array();
  for (int i = 0; i < 6; ++i) j.push_back(v[i]);
  return j;
}

Vec6 vec6_from_json(const json& j) {
  if (!j.is_array() || j.size() != 6) throw std::invalid_argument("expected 6 numbers");
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

}  // namespace

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string dataset_to_csv(const PairedDataset& data) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const PairedSample& row : data.rows) {
    const Vec6 s = row.signal.as_vector();
    const Vec6 w = row.wrench.as_vector();
    for (int i = 0; i < 6; ++i) {
      out += format_double(s[i]);
      out.push_back(',');
    }
    for (int i = 0; i < 6; ++i) {
      out += format_double(w[i]);
      out.push_back(i == 5 ? '\n' : ',');
    }
  }
  return out;
}

void write_dataset_csv(const std::string& path, const PairedDataset& data) {
  spit_file(path, dataset_to_csv(data));
}

PairedDataset dataset_from_csv(const std::string& text) {
  PairedDataset data;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) {
        throw std::invalid_argument("dataset csv line 1: unexpected header");
      }
      continue;
    }
    if (line.empty()) continue;
    Vec6 s, w;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 12; ++i) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        throw std::invalid_argument("dataset csv line " + std::to_string(line_no) +
                                    ": bad number in field " + std::to_string(i + 1));
      }
      (i < 6 ? s[i] : w[i - 6]) = v;
      p = next;
      if (i < 11) {
        if (p >= end || *p != ',') {
          throw std::invalid_argument("dataset csv line " + std::to_string(line_no) +
                                      ": expected 12 comma-separated fields");
        }
        ++p;
      }
    }
    if (p != end) {
      throw std::invalid_argument("dataset csv line " + std::to_string(line_no) +
                                  ": trailing characters");
    }
    data.rows.push_back(
        PairedSample{DeformationSignal::from_vector(s), Wrench::from_vector(w)});
  }
  return data;
}

PairedDataset read_dataset_csv(const std::string& path) {
  return dataset_from_csv(slurp_file(path));
}

std::string trace_to_jsonl(std::span<const TraceRecord> trace) {
  std::string out;
  for (const TraceRecord& rec : trace) {
    json j;
    j["t"] = rec.t;
    j["tag_in_cam"] = pose_to_json(rec.tag_in_cam);
    j["raw_signal"] = vec6_to_json(rec.raw_signal.as_vector());
    j["filtered_signal"] = vec6_to_json(rec.filtered_signal.as_vector());
    j["true_wrench"] = rec.true_wrench ? vec6_to_json(rec.true_wrench->as_vector()) : json();
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

void write_trace_jsonl(const std::string& path, std::span<const TraceRecord> trace) {
  spit_file(path, trace_to_jsonl(trace));
}

std::vector<TraceRecord> trace_from_jsonl(const std::string& text) {
  std::vector<TraceRecord> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    TraceRecord rec;
    rec.t = j.at("t").get<double>();
    rec.tag_in_cam = pose_from_json(j.at("tag_in_cam"));
    rec.raw_signal = DeformationSignal::from_vector(vec6_from_json(j.at("raw_signal")));
    rec.filtered_signal = DeformationSignal::from_vector(vec6_from_json(j.at("filtered_signal")));
    if (j.contains("true_wrench") && !j.at("true_wrench").is_null()) {
      rec.true_wrench = Wrench::from_vector(vec6_from_json(j.at("true_wrench")));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<TraceRecord> read_trace_jsonl(const std::string& path) {
  return trace_from_jsonl(slurp_file(path));
}

std::string window_to_csv(const SignalWindow& window) {
  std::string out;
  for (long r = 0; r < window.signals.rows(); ++r) {
    for (long c = 0; c < window.signals.cols(); ++c) {
      out += format_double(window.signals(r, c));
      out.push_back(c + 1 == window.signals.cols() ? '\n' : ',');
    }
  }
  return out;
}

void write_window_csv(const std::string& path, const SignalWindow& window) {
  spit_file(path, window_to_csv(window));
}

namespace {

json mat6_to_json(const Mat6& m) {
  json j = json::array();
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) j.push_back(m(r, c));
  return j;
}

Mat6 mat6_from_json(const json& j) {
  if (!j.is_array() || j.size() != 36) throw std::invalid_argument("expected 36 numbers");
  Mat6 m;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = j[static_cast<std::size_t>(6 * r + c)].get<double>();
  return m;
}

}  // namespace

std::string fit_report_to_json(const FitReport& fit) {
  json j;
  j["k_hat"] = mat6_to_json(fit.k_hat.matrix());
  j["r_squared"] = vec6_to_json(fit.r_squared);
  j["residual_rms"] = vec6_to_json(fit.residual_rms);
  return j.dump(2) + "\n";
}

void write_fit_report_json(const std::string& path, const FitReport& fit) {
  spit_file(path, fit_report_to_json(fit));
}

FitReport fit_report_from_json(const std::string& text) {
  const json j = json::parse(text);
  FitReport fit;
  fit.k_hat = StiffnessMatrix(mat6_from_json(j.at("k_hat")));
  fit.r_squared = vec6_from_json(j.at("r_squared"));
  fit.residual_rms = vec6_from_json(j.at("residual_rms"));
  return fit;
}

FitReport read_fit_report_json(const std::string& path) {
  return fit_report_from_json(slurp_file(path));
}

StiffnessMatrix read_stiffness_json(const std::string& path) {
  const json j = json::parse(slurp_file(path));
  if (j.is_array()) return StiffnessMatrix(mat6_from_json(j));
  if (j.contains("k_hat")) return StiffnessMatrix(mat6_from_json(j.at("k_hat")));
  if (j.contains("k")) return StiffnessMatrix(mat6_from_json(j.at("k")));
  throw std::invalid_argument("stiffness file: expected k_hat, k, or a bare 36-number array");
}

}  // namespace shapeforce
