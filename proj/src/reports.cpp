#include "maxavg/reports.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maxavg {

namespace {

json rat_to_json(const Rat& r) { return json::array({r.numerator(), r.denominator()}); }

Rat rat_from_json(const json& j) {
  return Rat(j.at(0).get<long long>(), j.at(1).get<long long>());
}

std::string kind_name(SequenceKind k) {
  switch (k) {
    case SequenceKind::PowerDiagonal: return "power";
    case SequenceKind::Paraboloid: return "paraboloid";
    case SequenceKind::Mixed: return "mixed";
  }
  return "power";
}

SequenceKind kind_from_name(const std::string& s) {
  if (s == "power") return SequenceKind::PowerDiagonal;
  if (s == "paraboloid") return SequenceKind::Paraboloid;
  if (s == "mixed") return SequenceKind::Mixed;
  throw std::invalid_argument("unknown sequence kind: " + s);
}

}  // namespace

json sequence_to_json(const SparseSequence& seq) {
  json doc;
  doc["version"] = 1;
  doc["kind"] = kind_name(seq.kind);
  if (seq.kind == SequenceKind::PowerDiagonal) doc["m"] = seq.m;
  if (seq.kind == SequenceKind::Paraboloid) doc["d"] = seq.d;
  if (seq.kind == SequenceKind::Mixed) doc["pattern"] = seq.pattern;
  doc["primes"] = seq.schedule.primes;
  doc["delta"] = rat_to_json(seq.schedule.delta);
  doc["cap"] = rat_to_json(seq.schedule.cap);
  doc["offsets"] = seq.offsets.offsets;
  doc["mass_cap"] = rat_to_json(seq.offsets.mass_cap);
  doc["blocks"] = json::array();
  for (const SequenceBlock& b : seq.blocks) {
    json jb;
    jb["k"] = b.k;
    jb["p"] = b.p;
    jb["a"] = b.a;
    jb["elements"] = b.elements;
    doc["blocks"].push_back(jb);
  }
  doc["merged"] = seq.merged;
  doc["growth_exponent"] = seq.growth_exponent;
  doc["growth_ratio"] = seq.growth_ratio;
  return doc;
}

SparseSequence sequence_from_json(const json& doc) {
  if (doc.at("version").get<int>() != 1)
    throw std::invalid_argument("sequence file: unsupported version");
  SequenceKind kind = kind_from_name(doc.at("kind").get<std::string>());

  PrimeSchedule schedule;
  schedule.primes = doc.at("primes").get<std::vector<std::uint64_t>>();
  schedule.delta = rat_from_json(doc.at("delta"));
  schedule.cap = rat_from_json(doc.at("cap"));

  OffsetSchedule offsets;
  offsets.offsets = doc.at("offsets").get<std::vector<std::int64_t>>();
  offsets.mass_cap = rat_from_json(doc.at("mass_cap"));

  int m_or_d = 0;
  std::vector<int> pattern;
  if (kind == SequenceKind::PowerDiagonal) {
    m_or_d = doc.at("m").get<int>();
    offsets.exponent = m_or_d;
  } else if (kind == SequenceKind::Paraboloid) {
    m_or_d = doc.at("d").get<int>();
    offsets.exponent = m_or_d + 1;
  } else {
    pattern = doc.at("pattern").get<std::vector<int>>();
    offsets.exponent = pattern.empty() ? 2 : pattern.front();
    bool uniform = true;
    for (int e : pattern) uniform = uniform && e == pattern.front();
    if (!uniform) offsets.per_block = pattern;
  }

  // Rebuild from the schedules and insist the file agrees byte for byte;
  // this re-checks every stored certificate and element.
  SparseSequence rebuilt = build_sequence(kind, schedule, offsets, m_or_d, pattern);
  if (doc.at("merged").get<std::vector<std::int64_t>>() != rebuilt.merged)
    throw std::invalid_argument("sequence file: merged list fails re-validation");
  const json& jblocks = doc.at("blocks");
  if (jblocks.size() != rebuilt.blocks.size())
    throw std::invalid_argument("sequence file: block count fails re-validation");
  for (std::size_t k = 0; k < rebuilt.blocks.size(); ++k) {
    if (jblocks[k].at("elements").get<std::vector<std::int64_t>>() != rebuilt.blocks[k].elements)
      throw std::invalid_argument("sequence file: block elements fail re-validation");
  }
  return rebuilt;
}

void write_sequence_file(const std::string& path, const SparseSequence& seq) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << sequence_to_json(seq).dump(2) << '\n';
}

SparseSequence load_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json doc = json::parse(in);
  return sequence_from_json(doc);
}

void write_signal_jsonl(const std::string& path, const IntSignal& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& [pos, val] : f.atoms()) out << json::array({pos, val}).dump() << '\n';
}

IntSignal load_signal_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<std::pair<std::int64_t, double>> atoms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json row = json::parse(line);
    atoms.emplace_back(row.at(0).get<std::int64_t>(), row.at(1).get<double>());
  }
  return IntSignal::from_atoms(atoms);
}

json weak_type_to_json(const WeakTypeReport& r) {
  json j;
  j["alphas"] = r.alphas;
  j["counts"] = r.counts;
  j["ratios"] = r.ratios;
  j["worst_ratio"] = r.worst_ratio;
  std::ostringstream hex;
  hex << std::hex << r.input_digest;
  j["input_digest"] = hex.str();
  return j;
}

json torus_scan_to_json(const TorusScan& s) {
  json j;
  j["grid_size"] = s.grid_size;
  j["refined"] = s.refined;
  j["sup_value"] = s.sup_value;
  j["argmax_theta"] = s.argmax_theta;
  json samples = json::array();
  for (const auto& [theta, mag] : s.samples) samples.push_back(json::array({theta, mag}));
  j["samples"] = samples;
  return j;
}

json inspection_to_json(const ProofInspection& pi) {
  json j;
  json sizes = json::object();
  for (const auto& [level, size] : pi.exceptional_sizes)
    sizes[std::to_string(level)] = size;
  j["exceptional_sizes"] = sizes;
  j["exceptional_total"] = pi.exceptional_total;
  j["exceptional_bound_ratio"] = pi.exceptional_bound_ratio;
  j["gs_norm_sq"] = pi.gs_norm_sq;
  j["gs_bound_constant"] = pi.gs_bound_constant;
  j["generous_domination_ok"] = pi.generous_domination_ok;
  return j;
}

json hypothesis_to_json(const HypothesisReport& hr) {
  json rows = json::array();
  for (const auto& row : hr.rows) {
    json r;
    r["k"] = row.k;
    r["p"] = row.p;
    r["support_size"] = row.support_size;
    r["support_bound"] = row.support_bound;
    r["lambda_sup"] = row.lambda_sup;
    r["lambda_sup_scaled"] = row.lambda_sup_scaled;
    rows.push_back(r);
  }
  json j;
  j["rows"] = rows;
  j["support_ok"] = hr.support_ok;
  j["c_f"] = hr.c_f;
  j["hl_constant"] = hr.hl_constant;
  return j;
}

std::string payload_digest(const json& payload) {
  const std::string dump = payload.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

json make_envelope(const json& config, const json& payload) {
  json env;
  env["version"] = 1;
  env["config"] = config;
  env["digest"] = payload_digest(payload);
  env["payload"] = payload;
  return env;
}

void write_report(const std::string& path, const json& envelope) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << envelope.dump(2) << '\n';
}

std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << json(row[i]).dump();  // shortest round-trip rendering
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << csv_to_string(header, rows);
}

}  // namespace maxavg
