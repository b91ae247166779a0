#pragma once

#include <stdexcept>
#include <string>

namespace hlo {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IndexOutOfRange : public Error {
  public:
    using Error::Error;
};

class DegenerateFace : public Error {
  public:
    using Error::Error;
};

class EmptyMesh : public Error {
  public:
    using Error::Error;
};

class IsolatedVertex : public Error {
  public:
    using Error::Error;
};

class GeometricallyDegenerateFace : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(int line, const std::string& reason)
        : Error("ParseError: line " + std::to_string(line) + ": " + reason), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class UnsupportedFormat : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class LengthMismatch : public Error {
  public:
    using Error::Error;
};

class TooFewNeighbors : public Error {
  public:
    using Error::Error;
};

class NoCandidate : public Error {
  public:
    using Error::Error;
};

class FaceCountMismatch : public Error {
  public:
    using Error::Error;
};

class VertexCountMismatch : public Error {
  public:
    using Error::Error;
};

class OpenMesh : public Error {
  public:
    using Error::Error;
};

}  // namespace hlo
