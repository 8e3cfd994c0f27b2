#pragma once

#include <string>

#include "mompda/core.hpp"

namespace mompda {

// Flat JSON document: name, depot [x,y], tasks [{pos, q0, alpha}], beta,
// speed, seed. Numbers carry 17 significant digits so save/load round-trips
// exactly.
void save_instance(const Instance& instance, const std::string& path);

// Throws std::runtime_error naming the file and the missing or malformed
// field.
Instance load_instance(const std::string& path);

}  // namespace mompda
