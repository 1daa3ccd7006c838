#ifndef MOMCERT_VERSION_HPP
#define MOMCERT_VERSION_HPP

namespace momcert {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
