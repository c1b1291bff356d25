#pragma once

#include <string>

#include "bblc/network.hpp"

namespace bblc {

// Network file format: one JSON document with top-level arrays `facts`,
// `rules`, `containers` and `links`. Container membership is derived from the
// facts' `container` fields on load (single source of truth), and files whose
// contents violate the structural invariants are rejected.

std::string network_to_json(const Network& net);
Network network_from_json(const std::string& text);

void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

} // namespace bblc
