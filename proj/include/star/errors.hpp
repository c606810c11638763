#pragma once

#include <stdexcept>
#include <string>

namespace star {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalPlacement : public Error {
 public:
  using Error::Error;
};

class NoLegalAction : public Error {
 public:
  using Error::Error;
};

class UnknownAgent : public Error {
 public:
  using Error::Error;
};

class StaleFeedback : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class SessionTimeout : public Error {
 public:
  using Error::Error;
};

}  // namespace star
