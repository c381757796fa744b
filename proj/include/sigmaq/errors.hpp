#pragma once

#include <stdexcept>
#include <string>

namespace sigmaq {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ScenarioTooLarge : Error {
  using Error::Error;
};
struct UnknownVariable : Error {
  using Error::Error;
};
struct NotAContext : Error {
  using Error::Error;
};
struct InvalidScenario : Error {
  using Error::Error;
};
struct InfeasibleMoments : Error {
  using Error::Error;
};
struct SignalingDetected : Error {
  using Error::Error;
};
struct InconsistentSystem : Error {
  using Error::Error;
};
struct NegativeMarginal : Error {
  using Error::Error;
};
struct WrongScenarioShape : Error {
  using Error::Error;
};
struct TooManyVectors : Error {
  using Error::Error;
};
struct BiasOutOfRange : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace sigmaq
