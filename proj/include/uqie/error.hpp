#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uqie {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the declared domain of a function or operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A catalog family produced NaN or Inf.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// make_manufactured would produce a(t) < 0.
class NonPositiveForcing : public Error {
 public:
  NonPositiveForcing(const std::string& what, double t, double value)
      : Error(what), t_(t), value_(value) {}
  double t() const { return t_; }
  double value() const { return value_; }

 private:
  double t_;
  double value_;
};

class RoleViolated : public Error {
 public:
  RoleViolated(const std::string& what, std::size_t worst_node, double margin)
      : Error(what), worst_node_(worst_node), margin_(margin) {}
  std::size_t worst_node() const { return worst_node_; }
  double margin() const { return margin_; }

 private:
  std::size_t worst_node_;
  double margin_;
};

class PreconditionUnmet : public Error {
 public:
  using Error::Error;
};

class FamilySolveFailed : public Error {
 public:
  FamilySolveFailed(const std::string& what, std::size_t member)
      : Error(what), member_(member) {}
  std::size_t member() const { return member_; }

 private:
  std::size_t member_;
};

}  // namespace uqie
