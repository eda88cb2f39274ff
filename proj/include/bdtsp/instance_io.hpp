#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bdtsp/types.hpp"

namespace bdtsp {

/// Parses either the native format
///
///     n m k
///     u v c      (m records, 1-indexed vertices, integer cost >= 1)
///
/// with '#' comments, or a TSPLIB EXPLICIT / FULL_MATRIX file. In TSPLIB
/// input, off-diagonal weights <= 0 mean "no edge" and the degree bound is
/// `tsplib_degree` or, if absent, the largest vertex degree (at least 3).
Instance parse_instance(std::string_view text, std::optional<int> tsplib_degree = std::nullopt);

Instance load_instance(const std::string& path, std::optional<int> tsplib_degree = std::nullopt);

/// Native format. Instances with preforced edges have no file form.
std::string serialize_instance(const Instance& inst);

/// 64-bit FNV-1a of the serialized instance.
std::uint64_t instance_digest(const Instance& inst);

}  // namespace bdtsp
