#pragma once

#include <stdexcept>
#include <string>

namespace pnr {

enum class Errc {
  domain,      // argument outside the operation's domain
  not_found,   // unknown facility, profile or node id
  parse,       // malformed scenario document
  validation,  // document parsed but the network or a profile is invalid
  units,       // missing or unsupported unit declaration
  io,          // file system failure
  size_guard,  // brute-force enumeration refused for a too-large network
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pnr
