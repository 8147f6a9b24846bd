#pragma once

// Append-only JSON-lines session log: one header line carrying the schedule
// hash, then one {"type":"response"} line per answered trial.

#include <fstream>
#include <string>
#include <string_view>

#include "colorvib/session.hpp"

namespace colorvib {

std::string header_line(const SessionRecord& rec);
std::string response_line(const Response& response);

// Full log text for a record; parse_session(serialize_session(r)) == r.
std::string serialize_session(const SessionRecord& rec);

// A trailing line without a newline that fails to parse is treated as a
// torn write and dropped.
SessionRecord parse_session(std::string_view text);

SessionRecord load_session(const std::string& path);

class SessionLog {
 public:
  // Creates the file with the record's header and existing responses, or
  // resumes an existing file after checking its header matches `rec`.
  // Returns the record as found on disk.
  SessionRecord open(const std::string& path, const SessionRecord& rec);

  void append(const Response& response);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace colorvib
