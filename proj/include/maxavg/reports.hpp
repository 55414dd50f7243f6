#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxavg/construction.hpp"
#include "maxavg/int_signal.hpp"
#include "maxavg/maximal.hpp"
#include "maxavg/proof_lab.hpp"
#include "maxavg/torus.hpp"

namespace maxavg {

using json = nlohmann::ordered_json;

// Sequence file: versioned JSON document holding schedules (with their
// certificates), blocks, and the merged list. Loading re-validates.
json sequence_to_json(const SparseSequence& seq);
SparseSequence sequence_from_json(const json& doc);
void write_sequence_file(const std::string& path, const SparseSequence& seq);
SparseSequence load_sequence_file(const std::string& path);

// Signals: JSON lines, one [position, value] pair per line.
void write_signal_jsonl(const std::string& path, const IntSignal& f);
IntSignal load_signal_jsonl(const std::string& path);

json weak_type_to_json(const WeakTypeReport& r);
json torus_scan_to_json(const TorusScan& s);
json inspection_to_json(const ProofInspection& pi);
json hypothesis_to_json(const HypothesisReport& hr);

// FNV-1a over the canonical dump; stable across runs, no timestamps.
std::string payload_digest(const json& payload);

// {version, config, digest, payload}
json make_envelope(const json& config, const json& payload);
void write_report(const std::string& path, const json& envelope);

// CSV with a header row; numbers rendered via shortest round-trip.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows);

}  // namespace maxavg
