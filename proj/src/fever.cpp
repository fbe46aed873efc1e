#include "claimcheck/fever.hpp"

#include <fstream>

#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

SentenceRef parse_entry(const nlohmann::json& entry, bool& present) {
  present = false;
  if (!entry.is_array()) throw ParseError("evidence entry must be an array");
  const nlohmann::json* page = nullptr;
  const nlohmann::json* line = nullptr;
  if (entry.size() == 4) {
    page = &entry[2];
    line = &entry[3];
  } else if (entry.size() == 2) {
    page = &entry[0];
    line = &entry[1];
  } else {
    throw ParseError("evidence entry must have 2 or 4 elements");
  }
  if (page->is_null()) return {};
  if (!page->is_string() || !line->is_number_integer() || line->get<std::int64_t>() < 0)
    throw ParseError("evidence entry must be [page, line]");
  present = true;
  return {page->get<std::string>(), line->get<std::uint32_t>()};
}

}  // namespace

FeverInstance parse_fever_instance(const nlohmann::json& row, std::size_t line_no) {
  FeverInstance inst;
  try {
    if (!row.is_object()) throw ParseError("claim row must be an object");
    if (!row.contains("id") || !row["id"].is_number_integer())
      throw ParseError("claim row needs an integer id");
    inst.claim_id = row["id"].get<std::int64_t>();
    if (auto it = row.find("claim"); it != row.end() && it->is_string())
      inst.claim = it->get<std::string>();
    if (auto it = row.find("label"); it != row.end() && !it->is_null()) {
      inst.label = it->is_string() ? parse_label(it->get<std::string>()) : std::nullopt;
      if (!inst.label) throw ParseError("unknown label " + it->dump());
    }
    if (auto it = row.find("evidence"); it != row.end() && !it->is_null()) {
      if (!it->is_array()) throw ParseError("evidence must be a list of evidence sets");
      for (const auto& set : *it) {
        if (!set.is_array()) throw ParseError("evidence set must be a list");
        EvidenceSet refs;
        for (const auto& entry : set) {
          bool present = false;
          SentenceRef ref = parse_entry(entry, present);
          if (present) refs.push_back(std::move(ref));
        }
        if (!refs.empty()) inst.evidence_sets.push_back(std::move(refs));
      }
    }
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), line_no);
  }
  if (inst.label && *inst.label != Label::kNotEnoughInfo && inst.evidence_sets.empty())
    throw ValidationError("claim " + std::to_string(inst.claim_id) + " is labelled " +
                          std::string(to_string(*inst.label)) + " but has no evidence");
  return inst;
}

std::vector<FeverInstance> read_fever_instances(std::istream& in) {
  std::vector<FeverInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    out.push_back(parse_fever_instance(row, line_no));
  }
  return out;
}

std::vector<FeverInstance> read_fever_instances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return read_fever_instances(in);
}

nlohmann::json to_json(const FeverInstance& instance) {
  nlohmann::json row;
  row["id"] = instance.claim_id;
  row["claim"] = instance.claim;
  if (instance.label) row["label"] = std::string(to_string(*instance.label));
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& set : instance.evidence_sets) {
    nlohmann::json refs = nlohmann::json::array();
    for (const auto& ref : set) refs.push_back({ref.page_id, ref.line_number});
    sets.push_back(std::move(refs));
  }
  row["evidence"] = std::move(sets);
  return row;
}

void write_fever_instances(std::ostream& out, const std::vector<FeverInstance>& instances) {
  for (const auto& inst : instances) out << to_json(inst).dump() << '\n';
}

}  // namespace claimcheck
