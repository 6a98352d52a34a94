#include "kg2/errors.hpp"

namespace kg2 {

namespace {

std::string describe_parse_error(std::size_t offset, const std::vector<std::string>& expected,
                                 const std::string& found) {
  std::string msg = "parse error at offset " + std::to_string(offset) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  return msg;
}

const char* resource_name(LimitExceeded::Resource r) {
  switch (r) {
    case LimitExceeded::Resource::States: return "states";
    case LimitExceeded::Resource::Constraints: return "constraints";
    case LimitExceeded::Resource::Time: return "time";
  }
  return "?";
}

}  // namespace

ParseError::ParseError(std::size_t off, std::vector<std::string> exp, const std::string& found)
    : Error(describe_parse_error(off, exp, found)), offset(off), expected(std::move(exp)) {}

LimitExceeded::LimitExceeded(Resource r, const std::string& where)
    : Error(std::string(resource_name(r)) + " limit exceeded" + (where.empty() ? "" : " in " + where)),
      resource(r) {}

}  // namespace kg2
