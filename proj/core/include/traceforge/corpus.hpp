#pragma once
// Canonical record model and line-delimited JSON I/O. Every corpus that
// flows through the toolkit is a list of Records in a .jsonl file, one
// JSON object per line, fields in a fixed canonical order.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace traceforge {

enum class Domain { mathematics, instruction_following, coding, safety, finance, other };

inline constexpr size_t kDomainCount = 6;
const std::vector<std::string>& domain_names();
std::optional<Domain> parse_domain(std::string_view name);
std::string_view domain_name(Domain d);

struct Record {
  std::string id;
  std::string instruction;
  std::string output;
  std::string domain;  // one of domain_names() when valid
  std::string source;  // sub-dataset name
  std::optional<double> rating;
  std::map<std::string, std::string> meta;

  bool operator==(const Record&) const = default;
};

struct Corpus {
  std::vector<Record> records;
  std::optional<std::filesystem::path> origin;

  size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  // Equality is content equality; origin is provenance only.
  bool operator==(const Corpus& other) const { return records == other.records; }
};

struct FieldViolation {
  std::string field;
  std::string rule;
  bool operator==(const FieldViolation&) const = default;
};

struct RecordViolation {
  size_t index = 0;
  std::string id;
  FieldViolation violation;
};

class JsonlError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Reads records in file order. Unknown JSON fields are preserved in meta
// (string values as-is, anything else as compact JSON text). Throws
// JsonlError on I/O failure, malformed JSON (message carries the line
// number), or a missing/mistyped required field.
Corpus read_jsonl(const std::filesystem::path& path);

// One JSON object per line, canonical field order
// id,instruction,output,domain,source,rating,meta; absent rating and empty
// meta are omitted. read_jsonl(write_jsonl(c)) == c.
void write_jsonl(const Corpus& corpus, const std::filesystem::path& path);

std::string to_jsonl_line(const Record& r);
Record record_from_json_line(const std::string& line);  // throws JsonlError

// Empty result iff all Record invariants hold.
std::vector<FieldViolation> validate_record(const Record& r);

// Per-record violations plus duplicate-id checks across the corpus.
std::vector<RecordViolation> validate_corpus(const Corpus& c);

}  // namespace traceforge
