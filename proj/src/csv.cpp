#include "thinmc/csv.hpp"

#include <charconv>
#include <iterator>
#include <stdexcept>
#include <system_error>

namespace thinmc {

std::string format_double(double value) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("parse_double: bad numeric token '" + token + "'");
  }
  return value;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out_ << '"';
      for (char c : f) {
        if (c == '"') out_ << '"';
        out_ << c;
      }
      out_ << '"';
    } else {
      out_ << f;
    }
  }
  out_ << '\n';
  if (!out_) throw std::runtime_error("write failed on '" + path_ + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  // Character-level parse so quoted fields may span lines; a newline is a row
  // boundary only outside quotes.
  CsvTable table;
  bool have_header = false;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;

  auto end_row = [&]() {
    fields.push_back(std::move(field));
    field.clear();
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
    fields.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
      row_has_content = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      row_has_content = true;
    } else if (c == '\n') {
      if (row_has_content || !field.empty() || !fields.empty()) end_row();
    } else if (c != '\r') {
      field += c;
      row_has_content = true;
    }
  }
  if (row_has_content || !field.empty() || !fields.empty()) end_row();
  return table;
}

}  // namespace thinmc
