#pragma once

#include <string>

#include "styrep/analysis.hpp"
#include "styrep/char_model.hpp"
#include "styrep/joint_model.hpp"
#include "styrep/syntactic_model.hpp"

namespace styrep {

// Model archive: UTF-8 key=value header lines terminated by a blank line,
// then the embedding matrices as little-endian IEEE-754 float32, row-major,
// in the order listed in the header. The header carries a checksum of the
// binary payload; save -> load -> save is byte-identical.

void save_joint(const JointModel& model, const std::string& path);
void save_char(const CharModel& model, const std::string& path);
void save_syntactic(const SyntacticModel& model, const std::string& path);

JointModel load_joint(const std::string& path);
CharModel load_char(const std::string& path);
SyntacticModel load_syntactic(const std::string& path);

// Reads the modality key and loads the archive into the matching slot.
void load_into(ModelSet& models, const std::string& path);

}  // namespace styrep
