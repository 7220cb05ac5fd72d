#include "wargame/core/response.hpp"

#include "wargame/util/error.hpp"

namespace wargame {

std::string ActionSet::to_bit_string() const {
  std::string s(kActionCount, '0');
  for (std::size_t i = 0; i < kActionCount; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

ActionSet ActionSet::from_bit_string(std::string_view s) {
  if (s.size() != kActionCount)
    throw SchemaError("response bit string must have " + std::to_string(kActionCount) + " characters, got " +
                      std::to_string(s.size()));
  ActionSet v;
  for (std::size_t i = 0; i < kActionCount; ++i) {
    if (s[i] == '1')
      v.set(i);
    else if (s[i] != '0')
      throw SchemaError("response bit string has invalid character at position " + std::to_string(i));
  }
  return v;
}

}  // namespace wargame
