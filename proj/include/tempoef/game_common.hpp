#pragma once

#include <string>

namespace tempoef {

enum class Player { Spoiler, Duplicator };

inline std::string to_string(Player p) { return p == Player::Spoiler ? "Spoiler" : "Duplicator"; }

struct VerifyResult {
  bool ok = false;
  std::string detail;  // on failure: the uncovered or losing branch
};

}  // namespace tempoef
