//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_ERRORS_H_
#define CHEMDIV_ERRORS_H_

#include <stdexcept>

namespace chemdiv {

/// Bad or inconsistent input data (empty sets, missing score columns,
/// malformed files). The CLI maps it to exit code 2.
class DataError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace chemdiv

#endif  // CHEMDIV_ERRORS_H_
