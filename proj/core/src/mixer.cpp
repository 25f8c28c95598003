#include "traceforge/mixer.hpp"

#include <fstream>
#include <unordered_set>

#include "traceforge/rng.hpp"
#include "traceforge/unicode.hpp"

namespace traceforge {

Corpus filter_by_rating(const Corpus& c, double threshold, FilterReport* report) {
  Corpus out;
  FilterReport local;
  for (const Record& r : c.records) {
    if (!r.rating) {
      ++local.dropped_missing_rating;
    } else if (*r.rating > threshold) {
      out.records.push_back(r);
      ++local.kept;
    } else {
      ++local.dropped_below;
    }
  }
  if (report) *report = local;
  return out;
}

MixtureSpec downsample(const MixtureSpec& spec, int percent) {
  if (percent < 1 || percent > 100) {
    throw MixtureSpecError("percent must lie in [1,100], got " + std::to_string(percent));
  }
  MixtureSpec out = spec;
  for (MixturePart& part : out.parts) {
    if (!part.target_count) {
      throw MixtureSpecError("part '" + part.name + "' has no count; cannot downsample");
    }
    part.target_count = *part.target_count * static_cast<size_t>(percent) / 100;
  }
  return out;
}

MixtureSpec leave_one_out(const MixtureSpec& spec, Domain domain) {
  MixtureSpec out;
  out.seed = spec.seed;
  bool found = false;
  for (const MixturePart& part : spec.parts) {
    if (part.domain == domain_name(domain)) {
      found = true;
    } else {
      out.parts.push_back(part);
    }
  }
  if (!found) {
    throw UnknownDomainError("no parts with domain '" + std::string(domain_name(domain)) + "'");
  }
  return out;
}

Corpus assemble(const MixtureSpec& spec, AssembleReport* report) {
  AssembleReport local;
  Corpus out;
  for (const MixturePart& part : spec.parts) {
    PartReport pr;
    pr.name = part.name;
    pr.domain = part.domain;

    Corpus c = read_jsonl(part.source_path);
    pr.read = c.size();
    if (part.rating_filter) {
      FilterReport fr;
      c = filter_by_rating(c, *part.rating_filter, &fr);
      pr.dropped_missing_rating = fr.dropped_missing_rating;
    }
    pr.after_filter = c.size();

    size_t want = part.target_count.value_or(c.size());
    if (want > c.size()) {
      throw MixtureSpecError("part '" + part.name + "': target " + std::to_string(want) +
                             " exceeds " + std::to_string(c.size()) + " available records");
    }
    SplitMix64 rng = derive_stream(spec.seed, part.name);
    for (size_t idx : sample_indices(rng, c.size(), want)) {
      out.records.push_back(std::move(c.records[idx]));
    }
    pr.sampled = want;
    local.total += want;
    local.parts.push_back(std::move(pr));
  }
  if (report) *report = std::move(local);
  return out;
}

namespace {

[[noreturn]] void spec_fail(const std::filesystem::path& path, size_t line_no,
                            const std::string& msg) {
  throw MixtureSpecError(path.string() + ": line " + std::to_string(line_no) + ": " + msg);
}

void finish_part(const std::filesystem::path& path, size_t line_no, MixturePart& part,
                 MixtureSpec& spec, std::unordered_set<std::string>& names) {
  if (part.name.empty()) spec_fail(path, line_no, "part is missing 'name'");
  if (!names.insert(part.name).second) {
    spec_fail(path, line_no, "duplicate part name '" + part.name + "'");
  }
  if (!parse_domain(part.domain)) {
    spec_fail(path, line_no, "part '" + part.name + "' has unknown domain '" + part.domain + "'");
  }
  if (part.source_path.empty()) {
    spec_fail(path, line_no, "part '" + part.name + "' is missing 'source'");
  }
  spec.parts.push_back(std::move(part));
  part = MixturePart{};
}

}  // namespace

MixtureSpec read_mixture_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MixtureSpecError("cannot open " + path.string());
  const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";

  MixtureSpec spec;
  MixturePart part;
  bool in_part = false;
  std::unordered_set<std::string> names;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim_view(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[part]") {
      if (in_part) finish_part(path, line_no, part, spec, names);
      in_part = true;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      spec_fail(path, line_no, "expected 'key = value'");
    }
    std::string key = std::string(trim_view(line.substr(0, eq)));
    std::string value = std::string(trim_view(line.substr(eq + 1)));
    try {
      if (!in_part) {
        if (key == "seed") {
          spec.seed = std::stoull(value);
        } else {
          spec_fail(path, line_no, "unknown top-level key '" + key + "'");
        }
      } else if (key == "name") {
        part.name = value;
      } else if (key == "domain") {
        part.domain = value;
      } else if (key == "source") {
        std::filesystem::path p(value);
        part.source_path = p.is_absolute() ? p : base / p;
      } else if (key == "count") {
        long long n = std::stoll(value);
        if (n <= 0) spec_fail(path, line_no, "count must be positive");
        part.target_count = static_cast<size_t>(n);
      } else if (key == "rating_filter") {
        part.rating_filter = std::stod(value);
      } else {
        spec_fail(path, line_no, "unknown part key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      spec_fail(path, line_no, "invalid value for '" + key + "'");
    } catch (const std::out_of_range&) {
      spec_fail(path, line_no, "value for '" + key + "' is out of range");
    }
  }
  if (in_part) finish_part(path, line_no, part, spec, names);
  if (spec.parts.empty()) {
    throw MixtureSpecError(path.string() + ": spec defines no parts");
  }
  return spec;
}

}  // namespace traceforge
