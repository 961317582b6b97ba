#ifndef CARLFWM_VERSION_HPP
#define CARLFWM_VERSION_HPP

namespace carlfwm {

inline constexpr const char* version = "0.1.0";

}

#endif
