#include "traceforge/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "traceforge/unicode.hpp"

#include "json.hpp"

namespace traceforge {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string>& domain_names() {
  static const std::vector<std::string> names = {
      "mathematics", "instruction_following", "coding", "safety", "finance", "other"};
  return names;
}

std::optional<Domain> parse_domain(std::string_view name) {
  const auto& names = domain_names();
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Domain>(i);
  }
  return std::nullopt;
}

std::string_view domain_name(Domain d) {
  return domain_names()[static_cast<size_t>(d)];
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw JsonlError(msg); }

std::string require_string(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing required field '") + key + "'");
  if (!it->is_string()) fail(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

Record record_from_json(const ordered_json& j) {
  if (!j.is_object()) fail("line is not a JSON object");
  Record r;
  r.id = require_string(j, "id");
  r.instruction = require_string(j, "instruction");
  r.output = require_string(j, "output");
  r.domain = require_string(j, "domain");
  r.source = require_string(j, "source");
  if (auto it = j.find("rating"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) fail("field 'rating' must be a number");
    r.rating = it->get<double>();
  }
  if (auto it = j.find("meta"); it != j.end()) {
    if (!it->is_object()) fail("field 'meta' must be an object");
    for (auto& [k, v] : it->items()) {
      r.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  // Unknown top-level fields are kept in meta so no input data is lost;
  // they override same-named meta entries.
  static const std::unordered_set<std::string> known = {
      "id", "instruction", "output", "domain", "source", "rating", "meta"};
  for (auto& [k, v] : j.items()) {
    if (known.count(k)) continue;
    r.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return r;
}

}  // namespace

Record record_from_json_line(const std::string& line) {
  ordered_json j = ordered_json::parse(line, nullptr, false);
  if (j.is_discarded()) fail("malformed JSON");
  return record_from_json(j);
}

Corpus read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  Corpus corpus;
  corpus.origin = path;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_view(line).empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      fail(path.string() + ": malformed JSON at line " + std::to_string(line_no));
    }
    try {
      corpus.records.push_back(record_from_json(j));
    } catch (const JsonlError& e) {
      fail(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) fail("I/O error while reading " + path.string());
  return corpus;
}

std::string to_jsonl_line(const Record& r) {
  ordered_json j;
  j["id"] = r.id;
  j["instruction"] = r.instruction;
  j["output"] = r.output;
  j["domain"] = r.domain;
  j["source"] = r.source;
  if (r.rating) j["rating"] = *r.rating;
  if (!r.meta.empty()) {
    ordered_json m = ordered_json::object();
    for (const auto& [k, v] : r.meta) m[k] = v;  // std::map order: sorted keys
    j["meta"] = std::move(m);
  }
  return j.dump();
}

void write_jsonl(const Corpus& corpus, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("cannot open " + path.string() + " for writing");
  for (const Record& r : corpus.records) {
    out << to_jsonl_line(r) << '\n';
  }
  out.flush();
  if (!out) fail("I/O error while writing " + path.string());
}

std::vector<FieldViolation> validate_record(const Record& r) {
  std::vector<FieldViolation> out;
  if (r.id.empty()) out.push_back({"id", "non-empty"});
  if (!parse_domain(r.domain)) out.push_back({"domain", "enum member"});
  if (!is_valid_utf8(r.instruction)) out.push_back({"instruction", "valid UTF-8"});
  if (!is_valid_utf8(r.output)) out.push_back({"output", "valid UTF-8"});
  return out;
}

std::vector<RecordViolation> validate_corpus(const Corpus& c) {
  std::vector<RecordViolation> out;
  std::unordered_map<std::string, size_t> seen;
  for (size_t i = 0; i < c.records.size(); ++i) {
    const Record& r = c.records[i];
    for (auto& v : validate_record(r)) {
      out.push_back({i, r.id, std::move(v)});
    }
    auto [it, inserted] = seen.emplace(r.id, i);
    if (!inserted) {
      out.push_back({i, r.id, {"id", "unique within corpus"}});
    }
  }
  return out;
}

}  // namespace traceforge
