#include "colorvib/session_store.hpp"

#include <filesystem>
#include <sstream>

#include "colorvib/serialize.hpp"

namespace colorvib {

using nlohmann::json;

std::string header_line(const SessionRecord& rec) {
  return json{{"type", "header"},
              {"schema_version", kSchemaVersion},
              {"seed", rec.schedule_ref.seed},
              {"schedule_hash", rec.schedule_ref.schedule_hash},
              {"trial_count", rec.trial_count},
              {"participant_label", rec.participant_label}}
      .dump();
}

std::string response_line(const Response& response) {
  json j = response;
  j["type"] = "response";
  return j.dump();
}

std::string serialize_session(const SessionRecord& rec) {
  std::string out = header_line(rec) + '\n';
  for (const auto& r : rec.responses) out += response_line(r) + '\n';
  return out;
}

SessionRecord parse_session(std::string_view text) {
  SessionRecord rec;
  bool have_header = false;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const bool terminated = nl != std::string_view::npos;
    const std::string_view line = text.substr(pos, terminated ? nl - pos : std::string_view::npos);
    pos = terminated ? nl + 1 : text.size();
    ++line_no;
    if (line.empty()) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      if (!terminated) break;
      throw Error(ErrorCode::kFormat, "session line " + std::to_string(line_no) + " is not JSON");
    }
    try {
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw Error(ErrorCode::kFormat, "duplicate session header");
        if (j.value("schema_version", 0) != kSchemaVersion) {
          throw Error(ErrorCode::kFormat, "unsupported session schema_version");
        }
        rec.schedule_ref.seed = j.at("seed").get<std::uint64_t>();
        rec.schedule_ref.schedule_hash = j.at("schedule_hash").get<std::string>();
        rec.trial_count = j.at("trial_count").get<std::size_t>();
        rec.participant_label = j.at("participant_label").get<std::string>();
        rec.completed = rec.trial_count == 0;
        have_header = true;
      } else if (type == "response") {
        if (!have_header) throw Error(ErrorCode::kFormat, "response before session header");
        rec = record_response(std::move(rec), j.get<Response>());
      } else {
        throw Error(ErrorCode::kFormat, "unknown session line type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kFormat, "session line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::kFormat, "session log has no header");
  return rec;
}

SessionRecord load_session(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_session(ss.str());
}

SessionRecord SessionLog::open(const std::string& path, const SessionRecord& rec) {
  out_.close();
  path_ = path;
  SessionRecord current = rec;
  if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
    current = load_session(path);
    if (current.schedule_ref != rec.schedule_ref || current.trial_count != rec.trial_count) {
      throw Error(ErrorCode::kInvalidArgument,
                  "'" + path + "' was recorded against a different schedule");
    }
    // Rewrite so a torn trailing line does not corrupt later appends.
    std::ofstream rewrite(path, std::ios::binary | std::ios::trunc);
    rewrite << serialize_session(current);
    if (!rewrite) throw Error(ErrorCode::kIo, "cannot rewrite '" + path + "'");
  } else {
    std::ofstream create(path, std::ios::binary | std::ios::trunc);
    create << serialize_session(current);
    if (!create) throw Error(ErrorCode::kIo, "cannot create '" + path + "'");
  }
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for append");
  return current;
}

void SessionLog::append(const Response& response) {
  if (!out_.is_open()) throw Error(ErrorCode::kIo, "session log is not open");
  out_ << response_line(response) << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIo, "append to '" + path_ + "' failed");
}

}  // namespace colorvib
