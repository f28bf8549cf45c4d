//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemdiv/errors.h"
#include "chemdiv/smiles.h"

namespace chemdiv {
namespace {
std::string_view trim(std::string_view s) {
  const char *ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}
}  // namespace

std::vector<SmilesRecord> read_smiles_records(std::istream &in) {
  std::vector<SmilesRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#')
      continue;

    SmilesRecord rec;
    rec.line = lineno;
    auto tab = view.find('\t');
    rec.smiles = std::string(trim(view.substr(0, tab)));
    if (tab != std::string_view::npos)
      rec.id = std::string(trim(view.substr(tab + 1)));
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SmilesRecord> read_smiles_file(const std::string &path) {
  if (path == "-")
    return read_smiles_records(std::cin);

  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);
  return read_smiles_records(in);
}

}  // namespace chemdiv
