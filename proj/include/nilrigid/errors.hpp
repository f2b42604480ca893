#pragma once

#include <stdexcept>
#include <string>

namespace nilrigid {

// Base class for every domain error thrown by the library. CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- graph parsing ----

class GraphSyntaxError : public Error {
public:
    GraphSyntaxError(int line, const std::string& what)
        : Error("syntax error on line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }
private:
    int line_;
};

class SelfLoopError : public Error {
public:
    SelfLoopError(int line, const std::string& label)
        : Error("self-loop at vertex '" + label + "' on line " + std::to_string(line)), line_(line) {}
    int line() const { return line_; }
private:
    int line_;
};

class DuplicateEdgeError : public Error {
public:
    DuplicateEdgeError(int line, const std::string& a, const std::string& b)
        : Error("duplicate edge {" + a + "," + b + "} on line " + std::to_string(line)), line_(line) {}
    int line() const { return line_; }
private:
    int line_;
};

class UnknownVertexError : public Error {
public:
    UnknownVertexError(int line, const std::string& label)
        : Error("unknown vertex '" + label + "' on line " + std::to_string(line)), line_(line) {}
    explicit UnknownVertexError(const std::string& label)
        : Error("unknown vertex '" + label + "'"), line_(0) {}
    int line() const { return line_; }
private:
    int line_;
};

// ---- algebra / automorphisms ----

class AlgebraMismatch : public Error {
public:
    explicit AlgebraMismatch(const std::string& what) : Error("algebra mismatch: " + what) {}
};

class DiagonalPoint : public Error {
public:
    DiagonalPoint() : Error("projective separation is undefined for equal points") {}
};

class NotBracketCompatible : public Error {
public:
    explicit NotBracketCompatible(const std::string& what)
        : Error("linear map is not bracket compatible: " + what) {}
};

// ---- rigidity engine ----

class ModeMismatch : public Error {
public:
    explicit ModeMismatch(const std::string& what) : Error("mode mismatch: " + what) {}
};

class BlockStructureViolation : public Error {
public:
    explicit BlockStructureViolation(const std::string& what)
        : Error("block structure violation: " + what) {}
};

class NonUnimodular : public Error {
public:
    explicit NonUnimodular(const std::string& what) : Error("not unimodular: " + what) {}
};

// ---- dynamics ----

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

// ---- cli / serialization ----

class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error("format error: " + what) {}
};

class UnknownExample : public Error {
public:
    explicit UnknownExample(const std::string& name) : Error("unknown example '" + name + "'") {}
};

class OutOfRange : public Error {
public:
    explicit OutOfRange(const std::string& what) : Error("out of range: " + what) {}
};

} // namespace nilrigid
