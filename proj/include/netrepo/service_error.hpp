#pragma once

#include <stdexcept>
#include <string>

namespace netrepo {

// Error carrying the HTTP status the service should answer with.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

}  // namespace netrepo
