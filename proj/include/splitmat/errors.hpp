#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace splitmat {

enum class errc {
  empty_basis_list,
  mixed_basis_sizes,
  exchange_axiom_violation,
  element_out_of_range,
  ground_set_too_large,
  empty_ground_set,
  not_connected,
  not_a_flat,
  unknown_name,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_basis_list: return "EmptyBasisList";
    case errc::mixed_basis_sizes: return "MixedBasisSizes";
    case errc::exchange_axiom_violation: return "ExchangeAxiomViolation";
    case errc::element_out_of_range: return "ElementOutOfRange";
    case errc::ground_set_too_large: return "GroundSetTooLarge";
    case errc::empty_ground_set: return "EmptyGroundSet";
    case errc::not_connected: return "NotConnected";
    case errc::not_a_flat: return "NotAFlat";
    case errc::unknown_name: return "UnknownName";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  errc code;
  // Populated where the contract promises specifics; -1 / 0 otherwise.
  int line = -1;            // 1-based input line for parse errors
  int block = -1;           // 0-based matroid block index for ingest errors
  std::uint32_t basis_a = 0;  // violating basis pair and element for
  std::uint32_t basis_b = 0;  // exchange-axiom failures
  int element = -1;

  Error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace splitmat
