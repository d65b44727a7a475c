#pragma once

#include <span>
#include <string>
#include <vector>

#include "shapeforce/calibration.hpp"
#include "shapeforce/sensing.hpp"

namespace shapeforce {

/// Paired-sample CSV with the fixed header
/// tx_mm,ty_mm,tz_mm,rx_rad,ry_rad,rz_rad,fx_n,fy_n,fz_n,tx_nm,ty_nm,tz_nm.
/// Doubles print in shortest round-trip form, so equal datasets produce
/// byte-identical files.
std::string dataset_to_csv(const PairedDataset& data);
void write_dataset_csv(const std::string& path, const PairedDataset& data);

/// Parse errors name the offending line number.
PairedDataset dataset_from_csv(const std::string& text);
PairedDataset read_dataset_csv(const std::string& path);

/// Trace file: JSONL, one record per line; poses as 12 row-major numbers.
std::string trace_to_jsonl(std::span<const TraceRecord> trace);
void write_trace_jsonl(const std::string& path, std::span<const TraceRecord> trace);
std::vector<TraceRecord> trace_from_jsonl(const std::string& text);
std::vector<TraceRecord> read_trace_jsonl(const std::string& path);

/// History window as a bare CSV matrix, one row per step, oldest first;
/// the export consumed by downstream learners.
std::string window_to_csv(const SignalWindow& window);
void write_window_csv(const std::string& path, const SignalWindow& window);

std::string fit_report_to_json(const FitReport& fit);
void write_fit_report_json(const std::string& path, const FitReport& fit);
FitReport fit_report_from_json(const std::string& text);
FitReport read_fit_report_json(const std::string& path);

/// Accepts a FitReport file, {"k": [36]}, or a bare 36-number array.
StiffnessMatrix read_stiffness_json(const std::string& path);

std::string slurp_file(const std::string& path);
void spit_file(const std::string& path, const std::string& content);

}  // namespace shapeforce
