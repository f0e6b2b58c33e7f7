/**
 * Input documents (poset + optional characteristic function as JSON) and
 * deterministic report rendering for the command-line front end.
 */

#ifndef SHEAFCOH_IO_HPP
#define SHEAFCOH_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "sheafcoh/charfun.hpp"
#include "sheafcoh/poset.hpp"

namespace sheafcoh {

struct InputDocument {
    SimplicialPoset poset;
    std::optional<CharacteristicFunction> charfun;
    std::string digest;          // content hash of the source file
    std::string path;
};

/**
 * Parse a JSON input document.  Accepted shapes:
 *   {"facets": [[1,2],[2,3],...]}
 *   {"cells": [{"vertices":[...],"facets":[ids]}, ...]}
 * optionally with
 *   {"lambda": n, "omega": {"<vertex>": [ints], ...}}
 * Throws std::invalid_argument with a descriptive message on schema errors.
 */
InputDocument parseInput(const std::string& path);

/** Parse from an in-memory JSON string (used by tests). */
InputDocument parseInputText(const std::string& text, const std::string& name = "<memory>");

/** FNV-1a hash of a byte string, rendered as hex. */
std::string contentDigest(const std::string& bytes);

/** Parse a --ring argument: Z, Q, or Fp:<p>. */
CoefficientRing parseRing(const std::string& text);

}  // namespace sheafcoh

#endif  // SHEAFCOH_IO_HPP
